"""Embedding verification for weighted local Morrey-type spaces."""

__version__ = "0.1.0"

from .weights import (  # noqa: F401
    AngularWeight,
    ExponentQuad,
    Monomial,
    Piecewise,
    RnWeight,
    WeightParseError,
    format_weight,
    parse_weight,
    weight_eval,
    weight_pow_compose,
    weight_product,
)
