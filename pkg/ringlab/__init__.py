"""
ringlab: compressed commuting graphs of finite rings, Z[1/m] and Z[1/m] ⋉ I
"""
__version__ = "0.1.0"
