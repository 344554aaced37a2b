# Pydantic Schemas for Request/Response Validation
