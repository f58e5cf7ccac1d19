"""Named acceptance suites behind ``superali verify``."""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Callable
from itertools import product

from .algebras import MatrixAlgebraSpec, extract_antisymmetrizers, generic_power
from .antisym import (
    OperatorTuple,
    antisymmetrize_naive,
    closure_of,
    oracle_equivalence_check,
    span_scan,
    star_product_eval,
)
from .commutator_formulas import (
    h5_check,
    kcomm_agreement,
    vect6_agreement,
    vect6_symbolic_ratio,
)
from .constant_store import ConstantStore
from .constants import Classification, Closure, DefaultDegrees
from .exceptions import SuperAliError, ValidationError
from .permutations import (
    Permutation,
    antisymmetrizer_sign,
    generic_sign,
    super_sign,
    tensor_sign,
)
from .report import CheckResult, VerificationReport
from .superscalar import GeneratorTable, SuperScalar
from .supermat import SuperMatrix, berezinian, determinant, supertrace
from .vectorfields import (
    GenericFieldFamily,
    VectorialSpec,
    adjoint_identity_check,
    classify_power,
    critical_scan,
    derivation_power,
    subcritical_eval,
)

logger = logging.getLogger(__name__)

Outcome = bool | tuple[bool, str]

EXPECTED_SPANS: dict[str, frozenset[int]] = {
    "sl(2)": frozenset({2}),
    "sl(3)": frozenset({2, 4}),
    "sl(4)": frozenset({2, 4, 6}),
    "sp(4)": frozenset({2, 5, 6}),
    "o(5)": frozenset({2, 5, 6}),
    "o(4)": frozenset({2, 5}),
}

# (algebra, r) with a_r identically zero and a_(r-2) not
MINIMAL_IDENTITIES = (("sp(2)", 4), ("sp(4)", 8), ("o(3)", 4), ("o(4)", 6))

STAR_PAIRS = ((2, 2), (2, 3), (3, 2), (3, 3))


def _cocycle(sign: Callable[[Permutation, tuple[int, ...]], int], s1, s2, parities) -> bool:
    return sign(s1 * s2, parities) == sign(s1, parities) * sign(s2, s1.act(parities))


def _random_matrix(n: int, rng: random.Random) -> SuperMatrix:
    rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    return SuperMatrix((n, 0), rows, parity=0)


def _expected_star(k: int, l: int, t: OperatorTuple):
    if k % 2 == 0 and l % 2 == 0:
        return t.ops[0].zero_like()
    value = antisymmetrize_naive(t)
    return value.scale(k) if l % 2 else value


def _odd_block(table: GeneratorTable, name: str, rows: int, cols: int) -> list[list[SuperScalar]]:
    return [[table.gen(name, (i, j)) for j in range(cols)] for i in range(rows)]


def _one_minus_product(left, right, table: GeneratorTable) -> list[list[SuperScalar]]:
    size, inner = len(left), len(right)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            total = SuperScalar.constant(int(i == j), table)
            for k in range(inner):
                total = total - left[i][k] * right[k][j]
            row.append(total)
        out.append(row)
    return out


class AcceptanceSuites:
    """Runs the named acceptance suites and collects CheckResults.

    Example:
        >>> suites = AcceptanceSuites(seed=0)
        >>> suites.run("sign-cocycle").passed
        True
    """

    NAMES = (
        "sign-cocycle",
        "classical-ali",
        "minimal-identities",
        "span",
        "super-closure",
        "star-product",
        "appendix",
        "vect1",
        "vect2",
        "h2",
        "svect2",
        "long",
        "all",
    )

    def __init__(
        self,
        store: ConstantStore | None = None,
        workers: int | None = None,
        seed: int = 0,
    ) -> None:
        self._store = store
        self._workers = workers
        self._seed = seed
        self._timing: dict[str, float] = {}

    def run(self, name: str) -> VerificationReport:
        """Run one suite; "all" runs every suite except "long".

        Raises:
            ValidationError: If the suite name is unknown
        """
        if name not in self.NAMES:
            raise ValidationError(f"Unknown suite {name!r}; choose from {', '.join(self.NAMES)}")
        self._timing = {}
        if name == "all":
            selected = [n for n in self.NAMES if n not in ("all", "long")]
        else:
            selected = [name]
        checks: list[CheckResult] = []
        for suite in selected:
            logger.info(f"Running suite {suite}")
            method = getattr(self, "_suite_" + suite.replace("-", "_"))
            checks.extend(method())
        report = VerificationReport(suite=name, checks=checks, timing=dict(self._timing))
        logger.info(f"Suite {name}: {len(report.failures())} of {len(checks)} checks failed")
        return report

    def _check(self, name: str, fn: Callable[[], Outcome]) -> CheckResult:
        start = time.perf_counter()
        try:
            outcome = fn()
        except SuperAliError as e:
            logger.warning(f"Check {name} raised: {e}")
            outcome = (False, f"error: {e}")
        self._timing[name] = (time.perf_counter() - start) * 1000
        passed, detail = outcome if isinstance(outcome, tuple) else (outcome, "")
        logger.debug(f"{name}: {'ok' if passed else 'FAIL'}")
        return CheckResult(name, bool(passed), detail)

    # --- matrix suites ----------------------------------------------------

    def _suite_sign_cocycle(self) -> list[CheckResult]:
        def exhaustive(sign) -> bool:
            perms = list(Permutation.all(3))
            return all(
                _cocycle(sign, s1, s2, parities)
                for s1 in perms
                for s2 in perms
                for parities in product((0, 1), repeat=3)
            )

        def sampled(sign) -> bool:
            rng = random.Random(self._seed)
            perms = list(Permutation.all(4))
            return all(
                _cocycle(
                    sign,
                    rng.choice(perms),
                    rng.choice(perms),
                    tuple(rng.randint(0, 1) for _ in range(4)),
                )
                for _ in range(200)
            )

        def sign_identity() -> bool:
            return all(
                generic_sign(parities) * antisymmetrizer_sign(s, parities)
                == tensor_sign(s, parities) * super_sign(s, parities)
                for k in range(1, 5)
                for s in Permutation.all(k)
                for parities in product((0, 1), repeat=k)
            )

        return [
            self._check("super_sign cocycle on S_3", lambda: exhaustive(super_sign)),
            self._check(
                "antisymmetrizer_sign cocycle on S_3", lambda: exhaustive(antisymmetrizer_sign)
            ),
            self._check("super_sign cocycle sampled on S_4", lambda: sampled(super_sign)),
            self._check("generic sign identity for k <= 4", sign_identity),
        ]

    def _suite_classical_ali(self) -> list[CheckResult]:
        checks = []
        for n in (1, 2, 3):
            spec = MatrixAlgebraSpec("gl", n)

            def ali(spec=spec, n=n) -> Outcome:
                top = generic_power(spec, 2 * n).is_zero
                below = not generic_power(spec, 2 * n - 1).is_zero
                return top and below, f"X^{2 * n} zero: {top}, X^{2 * n - 1} nonzero: {below}"

            checks.append(self._check(f"{spec}: a_{2 * n} = 0, a_{2 * n - 1} != 0", ali))
        for text, r in (("gl(2)", 3), ("gl(1|1)", 3)):
            spec = MatrixAlgebraSpec.parse(text)
            checks.append(
                self._check(
                    f"{spec}: generic and naive agree at r={r}",
                    lambda spec=spec, r=r: oracle_equivalence_check(spec, r, workers=self._workers),
                )
            )
        return checks

    def _suite_minimal_identities(self) -> list[CheckResult]:
        checks = []
        for text, r in MINIMAL_IDENTITIES:
            spec = MatrixAlgebraSpec.parse(text)

            def minimal(spec=spec, r=r) -> Outcome:
                zero = generic_power(spec, r).is_zero
                before = not generic_power(spec, r - 2).is_zero
                return zero and before, f"a_{r} zero: {zero}, a_{r - 2} nonzero: {before}"

            checks.append(self._check(f"{spec}: minimal identity a_{r}", minimal))
        return checks

    def _suite_span(self) -> list[CheckResult]:
        checks = []
        for text, expected in EXPECTED_SPANS.items():
            spec = MatrixAlgebraSpec.parse(text)

            def span(spec=spec, expected=expected) -> Outcome:
                found = span_scan(spec, 10, workers=self._workers).nonvanishing
                return found == expected, f"nonvanishing {sorted(found)}"

            checks.append(self._check(f"{spec}: span {sorted(expected)}", span))
        return checks

    def _suite_super_closure(self) -> list[CheckResult]:
        checks = []
        for fmt in ((1, 1), (2, 1)):
            spec = MatrixAlgebraSpec("gl", *fmt)
            for l in (1, 2, 3):
                checks.append(
                    self._check(
                        f"{spec}: str a_{2 * l} = 0",
                        lambda spec=spec, l=l: all(
                            supertrace(value).is_zero
                            for value in extract_antisymmetrizers(spec, 2 * l).values()
                        ),
                    )
                )
        for text in ("osp(1|2)", "osp(2|2)", "pe(2)"):
            spec = MatrixAlgebraSpec.parse(text)
            for r in (5, 6):
                checks.append(
                    self._check(
                        f"{spec}: a_{r} preserves the form",
                        lambda spec=spec, r=r: closure_of(spec, generic_power(spec, r))
                        == Closure.LANDS,
                    )
                )
        osp = MatrixAlgebraSpec.parse("osp(1|2)")
        checks.append(self._check(f"{osp}: a_4 = 0", lambda: generic_power(osp, 4).is_zero))
        for text, powers in (("q(2)", (2, 3, 4, 5)), ("sq(2)", (2, 4))):
            spec = MatrixAlgebraSpec.parse(text)
            for r in powers:
                checks.append(
                    self._check(
                        f"{spec}: closed under a_{r}",
                        lambda spec=spec, r=r: closure_of(spec, generic_power(spec, r))
                        == Closure.LANDS,
                    )
                )
        return checks

    def _suite_star_product(self) -> list[CheckResult]:
        rng = random.Random(self._seed)
        checks = []
        for n in (2, 3):
            for k, l in STAR_PAIRS:
                ops = [_random_matrix(n, rng) for _ in range(k + l - 1)]
                t = OperatorTuple.of(ops)
                checks.append(
                    self._check(
                        f"a_{k} * a_{l} on {n}x{n} matrices",
                        lambda k=k, l=l, t=t: star_product_eval(k, l, t) == _expected_star(k, l, t),
                    )
                )
        return checks

    def _suite_appendix(self) -> list[CheckResult]:
        checks = []
        for n in (1, 2, 3):
            spec = MatrixAlgebraSpec("gl", n)
            checks.append(
                self._check(
                    f"str X^(2r) = 0 on {spec}, r <= {n}",
                    lambda spec=spec, n=n: all(
                        supertrace(generic_power(spec, 2 * r)).is_zero for r in range(1, n + 1)
                    ),
                )
            )

        def det_inverse_pair(p: int, q: int) -> bool:
            table = GeneratorTable(
                [("u", (i, j), 1) for i in range(p) for j in range(q)]
                + [("v", (i, j), 1) for i in range(q) for j in range(p)]
            )
            u = _odd_block(table, "u", p, q)
            v = _odd_block(table, "v", q, p)
            left = determinant(_one_minus_product(u, v, table), table)
            right = determinant(_one_minus_product(v, u, table), table)
            return left * right == 1

        for p, q in product((1, 2, 3), repeat=2):
            checks.append(
                self._check(
                    f"det(1-UV) det(1-VU) = 1 for U {p}x{q}",
                    lambda p=p, q=q: det_inverse_pair(p, q),
                )
            )

        def ber_unit(n: int) -> bool:
            table = GeneratorTable(
                [("lambda", (), 1)] + [("x", (i, j), 0) for i in range(n) for j in range(n)]
            )
            lam = table.gen("lambda")
            block = [[lam * table.gen("x", (i, j)) for j in range(n)] for i in range(n)]
            unit = [[int(i == j) for j in range(n)] for i in range(n)]
            z = SuperMatrix.from_blocks(unit, block, block, unit, parity=0, table=table)
            return berezinian(z) == 1

        for n in (1, 2):
            checks.append(self._check(f"Ber(1 lX; lX 1) = 1 for n={n}", lambda n=n: ber_unit(n)))
        return checks

    # --- vectorial suites -------------------------------------------------

    def _power_check(self, spec: VectorialSpec, n: int, expect: str) -> CheckResult:
        def check() -> Outcome:
            item = classify_power(spec, derivation_power(spec, n))
            ok = item.classification == expect and (
                expect == Classification.ZERO or item.closure == Closure.LANDS
            )
            return ok, f"{item.classification}, order {item.order}, {item.closure}"

        return self._check(f"{spec} d={spec.degree}: D^{n} {expect}", check)

    def _suite_vect1(self) -> list[CheckResult]:
        checks = []
        for degree in (3, 4):
            spec = VectorialSpec("vect", 1, degree)
            checks.append(self._power_check(spec, 2, Classification.COMMUTATOR))
            checks.append(self._power_check(spec, 3, Classification.ZERO))

        def subcritical() -> Outcome:
            family = GenericFieldFamily(1, 4, DefaultDegrees.VECT1)
            *xs, y = family.fields()
            result = subcritical_eval(xs, y)
            return result.matches, f"multiplier has {len(result.multiplier)} terms"

        checks.append(self._check("subcritical A_3 = -2 Wronskian, symbolic d=4", subcritical))
        spec = VectorialSpec("vect", 1, DefaultDegrees.VECT1)
        checks.append(
            self._check(
                "vect(1): A_4 vanishes on the adjoint",
                lambda: adjoint_identity_check(spec, 4, workers=self._workers),
            )
        )
        return checks

    def _suite_vect2(self) -> list[CheckResult]:
        def vect6() -> Outcome:
            result = vect6_agreement(samples=5, seed=self._seed)
            ok = result.mirror_consistent and result.d1_constant not in (None, 0)
            return ok, f"d_1 constant {result.d1_constant}, d_2 constant {result.d2_constant}"

        def vect6_symbolic() -> Outcome:
            ratio = vect6_symbolic_ratio(DefaultDegrees.VECT2)
            return ratio not in (None, 0), f"constant {ratio}"

        checks = []
        for degree in (DefaultDegrees.VECT2, DefaultDegrees.VECT2 + 1):
            spec = VectorialSpec("vect", 2, degree)
            checks.append(self._power_check(spec, 6, Classification.COMMUTATOR))
            checks.append(self._power_check(spec, 7, Classification.ZERO))
        checks.append(self._check("vect(2): a_6 matches the determinant combination", vect6))
        checks.append(
            self._check("vect(2): a_6 matches the combination, symbolic d=2", vect6_symbolic)
        )
        checks.append(
            self._check(
                "vect(2): kcomm_first_order agrees with a_6",
                lambda: kcomm_agreement(2, 6, samples=10, seed=self._seed),
            )
        )
        return checks

    def _suite_h2(self) -> list[CheckResult]:
        spec = VectorialSpec("h", 2, DefaultDegrees.H2)

        def h5() -> Outcome:
            result = h5_check(samples=20, seed=self._seed, store=self._store)
            return (
                result.proportional and result.divergence_free,
                f"c = {result.constant}, divergence-free: {result.divergence_free}",
            )

        return [
            self._power_check(spec, 5, Classification.COMMUTATOR),
            self._check("h(2): a_5 = c X_det on sampled fields", h5),
        ]

    def _suite_svect2(self) -> list[CheckResult]:
        spec = VectorialSpec("svect", 2, DefaultDegrees.SVECT2)
        return [self._power_check(spec, 5, Classification.COMMUTATOR)]

    def _suite_long(self) -> list[CheckResult]:
        vect3 = VectorialSpec("vect", 3, 1)
        h2 = VectorialSpec("h", 2, DefaultDegrees.H2)

        def vect3_scan() -> Outcome:
            report = critical_scan(vect3, 10, 13, allow_long=True, workers=self._workers)
            found = report.classifications()
            ok = found[10] == Classification.COMMUTATOR and found[13] == Classification.ZERO
            return ok, f"D^10 {found[10]}, D^13 {found[13]}"

        return [
            self._check("vect(3) d=1: D^10 commutator, D^13 zero", vect3_scan),
            self._check(
                "h(2): A_7 vanishes on the adjoint (sampled)",
                lambda: adjoint_identity_check(
                    h2, 7, samples=20, seed=self._seed, workers=self._workers
                ),
            ),
        ]
