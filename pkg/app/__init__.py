__all__ = [
    "models",
    "errors",
    "numeric_core",
    "quad_max",
    "series",
    "disk_maps",
    "coeff_bodies",
    "concave_rep",
    "fekete_szego",
    "regions",
    "verify",
    "persistence",
    "cli",
    "api",
    "utils",
]
