# This file marks modules as a Python package for grossca
