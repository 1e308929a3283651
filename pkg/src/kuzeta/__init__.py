"""KU-local zeta-functions of finite CW-complexes.

Exact special values, orders of KU-local homotopy groups and numeric checks,
computed from the K-theory of a complex.
"""

from .arith import (
    ExactRational,
    FactoredInteger,
    denom,
    factor_integer,
    is_probable_prime,
    prime_to_part,
)
from .bernoulli import bernoulli_number, bernoulli_polynomial, zeta_numeric, zeta_special_value
from .characters import (
    DirichletCharacter,
    UnitGroupStructure,
    conductor,
    dir_prime_blocks,
    dir_prime_set,
    enumerate_characters,
    parity,
    primitive_of,
    unit_group_structure,
)
from .cyclotomic import CyclotomicElement, cyc_arith, cyclotomic_polynomial, embed, root_of_unity
from .errors import (
    KuZetaError,
    NotRationalError,
    OutOfRangeError,
    PoleError,
    TranscendentalValueError,
    ValidationError,
)
from .lfunctions import (
    completed_l_numeric,
    gauss_sum_numeric,
    generalized_bernoulli,
    hurwitz_zeta_numeric,
    l_numeric,
    l_special_value,
    orbit_product,
    root_number,
)
from .model import (
    KTheoryDatum,
    WeightCell,
    builtin,
    cpn,
    dual,
    load_datum,
    moore,
    parse_document,
    sphere,
    suspend,
    validate,
    wedge,
)
from .zeta import (
    ZetaFactorization,
    euler_product_truncated,
    factorized_numeric,
    functional_equation_residual,
    homotopy_group_order,
    provisional_factorization,
    provisional_limit_numeric,
    provisional_special_value,
    torsion_l_special_value,
    vanishing_order,
    zeta_factorization,
    zeta_ku_special_value,
)

__version__ = "0.1.0"
