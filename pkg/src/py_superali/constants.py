"""Constants for py-superali."""


class Limits:
    """Size limits for the exhaustive code paths."""

    # r! enumeration cap of the naive antisymmetrizer
    NAIVE_CAP = 8
    MAX_TRUNCATION_DEGREE = 8
    # basis-tuple count above which adjoint checks switch to sampling
    EXHAUSTIVE_ADJOINT_LIMIT = 2000


class EnvVars:
    """Environment variables read by the package."""

    THREADS = "SUPERALI_THREADS"


class CacheLocation:
    """platformdirs application identifiers."""

    APP_NAME = "superali"
    APP_AUTHOR = "py-superali"
    CONSTANTS_FILE = "constants.json"


class Classification:
    """Closed vocabulary for scan results."""

    ZERO = "zero"
    COMMUTATOR = "commutator"
    HIGHER_ORDER = "higher-order"
    NONVANISHING = "nonvanishing"


class Closure:
    """Closure flags for scan results."""

    LANDS = "lands-in-spec"
    LEAVES = "leaves-spec"


class Grammar:
    """Descriptor grammars, quoted in parse errors and CLI help."""

    MATRIX = "gl(m), gl(m|n), sl(m), sl(m|n), o(k), sp(2k), osp(m|2n), pe(n), q(n), sq(n)"
    VECTORIAL = "vect(n), svect(n), h(2n)"
    FIELD_LINE = "sum of coef*x^a*d/dx terms, e.g. 1*x^0*d/dx + 3/2*x^2*d/dx"


class DefaultDegrees:
    """Default truncation degrees for vectorial scans."""

    VECT1 = 4
    VECT2 = 2
    SVECT2 = 2
    # coefficient degree 2 means generating functions of degree <= 3
    H2 = 2


class HamiltonianConvention:
    """Sign convention for Hamiltonian vector fields."""

    NAME = "X_f = f_p d_q - f_q d_p"
    STORE_KEY = "h5_constant"
