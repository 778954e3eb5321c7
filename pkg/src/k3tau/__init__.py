__all__ = [
    "codec", "conditions", "config", "discriminant", "errors", "hilbert", "intmat", "involution",
    "k3lattices", "lattice", "logging_setup", "main", "mukai", "pell", "report", "suites",
]
