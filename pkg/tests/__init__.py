# Tests package for the discrete differential operator
