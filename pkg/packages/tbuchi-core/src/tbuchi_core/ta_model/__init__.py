from .._guards import Atom, Guard, Relation
from ._automaton import LABEL_JOIN, TBA, Network, Transition
from ._bounds import compute_lu_bounds, lu_bounds_of_guards
from ._errors import ModelError, ModelSemanticError, ModelSyntaxError
from ._generators import (
    AutomatonBuilder,
    gen_csma,
    gen_drifting_loop,
    gen_fddi,
    gen_fischer,
    gen_train_gate,
    scale_constants,
)
from ._parser import Model, parse_model, print_model
from ._product import flatten, product
from ._properties import PROPERTIES, gen_property

__all__ = [
    "Atom",
    "AutomatonBuilder",
    "Guard",
    "LABEL_JOIN",
    "Model",
    "ModelError",
    "ModelSemanticError",
    "ModelSyntaxError",
    "Network",
    "PROPERTIES",
    "Relation",
    "TBA",
    "Transition",
    "compute_lu_bounds",
    "flatten",
    "gen_csma",
    "gen_drifting_loop",
    "gen_fddi",
    "gen_fischer",
    "gen_property",
    "gen_train_gate",
    "lu_bounds_of_guards",
    "parse_model",
    "print_model",
    "product",
    "scale_constants",
]
