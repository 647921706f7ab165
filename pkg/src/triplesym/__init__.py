"""Exact power residue symbols, triple symbols and the machinery behind them.

Quadratic and cubic residue symbols over Q and Q(zeta_3), the triple
symbols [p1,p2,p3] and [pi1,pi2,pi3]_3 read off by Euler criteria from
normalized form solutions, truncated mod-l Magnus expansions with the
induced filtration and invariants, and an exact model of the degree-l^3
Heisenberg covering of the t-line with its automorphism group.
"""

from .eisenstein import (
    EisensteinInt,
    EisensteinPrime,
    cube_roots,
    cubic_residue_symbol,
    is_prime,
    norm,
    primary_associate,
    reduce,
)
from .errors import (
    BadConstant,
    BadModulus,
    DegeneratePrime,
    DivisibleByModulus,
    ExcludedPrime,
    Inconsistent,
    InconsistentShape,
    IndexOutOfRange,
    NoCubeRoot,
    NoPrimaryAssociate,
    NotCoprime,
    NotInF2,
    NotPrime,
    NotScalar,
    PreconditionFailed,
    SearchExhausted,
    TriplesymError,
)
from .form_solver import (
    CubicData,
    RedeiData,
    enumerate_cubic,
    enumerate_redei,
    solve_cubic,
    solve_redei,
)
from .kummer_cover import (
    CoverAutomorphism,
    CoverField,
    HeisenbergMatrix,
    RadicalElement,
    make_generators,
    monodromy_check,
    to_matrix,
    verify_relations,
)
from .magnus import (
    FreeWord,
    NormalForm2,
    TruncatedSeries,
    expand,
    local_relation_check,
    milnor_of_element,
    mu,
    normal_form_deg2,
    parse_word,
    zassenhaus_degree,
)
from .residue_symbols import SymbolValue, legendre, pair_milnor
from .triple_symbols import (
    TripleSymbolReport,
    cubic_triple_symbol,
    milnor_from_symbol,
    redei_symbol,
)

__version__ = "0.1.0"
