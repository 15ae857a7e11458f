# Make the solvers directory a Python package
