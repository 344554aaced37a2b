"""Ruby-lattice two-body color code toolkit"""
