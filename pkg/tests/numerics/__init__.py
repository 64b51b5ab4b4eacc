# Numerical core tests package
