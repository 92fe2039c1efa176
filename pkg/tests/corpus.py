"""Corpus files shipped with the package, with the command and exit code each one expects."""
from importlib import resources

CASES = {
    "halfplane_ray0.json": ("criterion", 0),
    "halfplane_rayPi2.json": ("criterion", 0),
    "tilted_square_rayMinusPi4.json": ("criterion", 0),
    "singular_case.json": ("interpolate", 2),
    "hermite_m2.json": ("interpolate", 0),
    "hull_square_upper.json": ("hull", 0),
    "contact_corner.json": ("contact", 0),
    "thin_1_to_100.json": ("thin", 0),
    "gproduct_powers_of_two.json": ("gproduct", 0),
    "bounds_two_terms.json": ("bounds", 0),
    "bounds_uncertified.json": ("bounds", 3),
    "converge_ray.json": ("converge", 0),
    "malformed.json": ("criterion", 2),
    "broken_syntax.json": ("hull", 2),
}


def path(name: str) -> str:
    return str(resources.files("expseries") / "corpus" / name)
