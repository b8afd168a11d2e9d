"""Multi-bracketed Conway games, well-bracketed strategies and their categories,
with a tensorial sequent calculus and a small linear PCF on top."""

from .arena import (
    ONE,
    OPPONENT,
    POINTED_UNIT,
    PROPONENT,
    Coalesced,
    Dual,
    ExplicitGame,
    Game,
    Move,
    Tensor,
    build_game,
    dual,
    enumerate_plays,
    is_path,
    project_play,
    replay,
    structurally_equal,
    tensor,
)
from .bracketing import (
    AxiomReport,
    ResourceCount,
    attach_brackets,
    check_axioms,
    classic_wb_oracle,
    is_wb_play,
    kappa,
    wb_violation,
)
from .category import (
    Bang,
    bang,
    contraction,
    dereliction,
    epsilon,
    eta,
    fixpoint,
    promotion,
    structural,
    symmetry,
    trace,
    weakening,
)
from .errors import GameError
from .fam import FamMorphism, FamObject, distributivity, fam_coproduct, fam_negation, fam_tensor, family
from .generate import gen_random_game, gen_random_wb_strategy, gen_wb_pair
from .laws import LawReport, law_suite, modality_adjunction_check
from .logic import ProofTree, check_proof, interpret_formula, interpret_proof, node, sequent
from .pcf import denotation, parse_pcf, pcf_eval, pcf_typecheck
from .pointed import (
    Negation,
    affine_strip,
    curry,
    double_neg_maps,
    evaluation,
    lift_negation,
    phi,
    phi_inverse,
    pointed_exponential,
    strength,
)
from .strategy import (
    Iso,
    Strategy,
    arrow,
    compose,
    copycat,
    first_difference,
    is_wb_strategy,
    make_strategy,
    plays_upto,
    strategies_equal,
    tensor_strategies,
)

__version__ = "0.1.0"
