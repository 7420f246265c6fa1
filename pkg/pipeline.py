import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional

from tqdm import tqdm

from config import Config, VerifyConfig
from core import classno, cyclo, oracle, quatalg
from core.classno import CensusReport, census
from core.exceptions import EnumerationBoundError, InvalidInputError
from core.numth import factorize, primes_between
from core.report import SuiteResult, VerificationPayload

logger = logging.getLogger(__name__)


class CensusPipeline:
    """Census reports for every prime in [p_min, p_max], in ascending p."""

    def __init__(self, p_min: int, p_max: int, threads: Optional[int] = None, progress: bool = True):
        if not 2 <= p_min <= p_max <= Config.CENSUS_FORMULA_BOUND:
            raise InvalidInputError(
                f"need 2 <= p_min <= p_max <= {Config.CENSUS_FORMULA_BOUND}, got [{p_min}, {p_max}]"
            )
        self.p_min = p_min
        self.p_max = p_max
        self.threads = threads or Config.CENSUS_THREADS
        self.progress = progress
        self.primes = primes_between(p_min, p_max)

    def iter_reports(self) -> Iterator[CensusReport]:
        bar = tqdm(total=len(self.primes), desc="Census", unit="prime", disable=not self.progress)
        try:
            if self.threads == 1 or len(self.primes) < 2:
                for report in map(census, self.primes):
                    bar.update()
                    yield report
                return
            chunksize = max(1, len(self.primes) // (self.threads * 8))
            with ProcessPoolExecutor(max_workers=self.threads) as executor:
                # map yields in submission order, so output stays sorted by p
                for report in executor.map(census, self.primes, chunksize=chunksize):
                    bar.update()
                    yield report
        finally:
            bar.close()

    def run(self) -> List[CensusReport]:
        reports = list(self.iter_reports())
        partial = [r.p for r in reports if not r.assumptions_ok]
        logger.info("census sweep [%d, %d]: %d primes, partial at %s",
                    self.p_min, self.p_max, len(reports), partial)
        return reports


class VerificationPipeline:
    def __init__(self, bound: int, suites: Optional[List[str]] = None, progress: bool = True):
        self.bound = bound
        self.suites = suites or list(VerifyConfig.ALL_SUITES)
        self.progress = progress
        self._check_arguments()

        self._runners: Dict[str, Callable[[], SuiteResult]] = {
            'ideal-classes': self._suite_ideal_classes,
            'eichler': self._suite_eichler,
            'units': self._suite_units,
            'cosets': self._suite_cosets,
            'identities': self._suite_identities,
            'integrality': self._suite_integrality,
            'asymptotic': self._suite_asymptotic,
            'symmetry': self._suite_symmetry,
            'lattices': self._suite_lattices,
            'orders': self._suite_orders,
        }

    def _check_arguments(self):
        unknown = [s for s in self.suites if s not in VerifyConfig.ALL_SUITES]
        if unknown:
            raise InvalidInputError(f"unknown suites: {', '.join(unknown)}")
        if self.bound < 2:
            raise InvalidInputError(f"bound must be at least 2, got {self.bound}")
        enumeration = [s for s in self.suites if s in VerifyConfig.ENUMERATION_SUITES]
        if enumeration and self.bound > Config.CENSUS_ENUM_BOUND:
            raise InvalidInputError(
                f"suites {', '.join(enumeration)} need --bound <= {Config.CENSUS_ENUM_BOUND}"
            )
        if self.bound > VerifyConfig.FORMULA_BOUND:
            raise InvalidInputError(f"bound must not exceed {VerifyConfig.FORMULA_BOUND}")

    def run(self) -> VerificationPayload:
        results = []
        for name in tqdm(self.suites, desc="Suites", disable=not self.progress):
            try:
                result = self._runners[name]()
            except Exception as e:
                logger.exception("suite %s raised", name)
                result = SuiteResult(name=name, passed=False, error=f"{type(e).__name__}: {e}")
            logger.info("suite %s: %s", name, "pass" if result.passed else "FAIL")
            results.append(result)

        return VerificationPayload(
            bound=self.bound,
            passed=all(r.passed for r in results),
            suites=results,
        )

    def _primes(self, lo: int = VerifyConfig.ENUMERATION_MIN_P, hi: Optional[int] = None) -> List[int]:
        return primes_between(lo, self.bound if hi is None else min(hi, self.bound))

    def _progress(self, items, desc: str):
        return tqdm(items, desc=desc, leave=False, disable=not self.progress)

    @staticmethod
    def _compare(name: str, cases: Iterator, details: Optional[dict] = None) -> SuiteResult:
        """Consume (label, expected, actual) triples and stop at the first mismatch."""
        checked = 0
        for label, expected, actual in cases:
            checked += 1
            if expected != actual:
                return SuiteResult(
                    name=name, passed=False, checked=checked,
                    counterexample=f"{label}: expected {expected}, got {actual}",
                    details=details or {},
                )
        return SuiteResult(name=name, passed=True, checked=checked, details=details or {})

    def _suite_ideal_classes(self) -> SuiteResult:
        def cases():
            for p in self._progress(self._primes(), "ideal classes"):
                order = quatalg.maximal_order(quatalg.make_algebra(p))
                classes = oracle.enumerate_right_ideal_classes(order)
                yield f"h(O) at p={p}", classno.h_maximal(p), classes.class_number
                yield f"mass at p={p}", oracle.eichler_mass(p), classes.mass
        return self._compare('ideal-classes', cases())

    def _suite_eichler(self) -> SuiteResult:
        skipped = []

        def cases():
            for p in self._progress(self._primes(), "eichler"):
                for ell in (2, 3):
                    try:
                        brute = oracle.h_eichler_bruteforce(p, ell)
                    except EnumerationBoundError:
                        skipped.append(f"{p}*{ell}")
                        continue
                    yield f"h(O^({ell})) at p={p}", classno.h_eichler_pizer(p, ell), brute

        result = self._compare('eichler', cases())
        result.details['skipped_over_bound'] = skipped
        return result

    def _suite_units(self) -> SuiteResult:
        def cases():
            hurwitz = quatalg.maximal_order(quatalg.make_algebra(2))
            yield "|O^x| at p=2", 24, oracle.unit_group_order(hurwitz)
            yield "|O^x| at p=3", 12, oracle.unit_group_order(quatalg.maximal_order(quatalg.make_algebra(3)))
            for p in self._progress(self._primes(), "units"):
                yield f"(h1, h2, h3) at p={p}", classno.h123(p), oracle.h123_bruteforce(p)
        return self._compare('units', cases())

    def _suite_cosets(self) -> SuiteResult:
        table = oracle.double_coset_table()
        expected = ((6, 3, 2), (3, 2, 1), (2, 1, 2))
        return self._compare(
            'cosets',
            iter([("double coset table", expected, table.entries)]),
            details={'table': [list(row) for row in table.entries]},
        )

    def _suite_identities(self) -> SuiteResult:
        coset_table = oracle.double_coset_table().entries

        def cases():
            for p in self._progress(self._primes(), "identities"):
                for name, (lhs, rhs) in classno.identity_report(p, coset_table).items():
                    yield f"{name} at p={p}", rhs, lhs
        return self._compare('identities', cases())

    def _suite_integrality(self) -> SuiteResult:
        # IntegralityError propagates and is recorded as the suite error
        def cases():
            for p in self._progress(self._primes(), "integrality"):
                report = census(p)
                values = [v for v in report.terms.values()]
                values += [classno.h_maximal(p), classno.h_O8(p), classno.h_O16(p),
                           classno.h_eichler_pizer(p, 2), classno.h_eichler_pizer(p, 3)]
                values += list(classno.h123(p).as_tuple())
                yield f"terms at p={p} are nonnegative integers", True, all(
                    isinstance(v, int) and v >= 0 for v in values
                )
        return self._compare('integrality', cases())

    def _suite_asymptotic(self) -> SuiteResult:
        lo, hi = VerifyConfig.ASYMPTOTIC_RANGE
        slope = VerifyConfig.ASYMPTOTIC_SLOPE
        worst: Dict[str, object] = {}

        def cases():
            for p in self._progress(primes_between(lo + 1, hi - 1), "asymptotic"):
                deviation = abs(classno.asymptotic_ratio(p) - 1)
                if not worst or deviation * p > worst["scaled"]:
                    worst.update(p=p, scaled=deviation * p)
                yield f"|9H/p^2 - 1| < {slope}/p at p={p}", True, deviation < Fraction(slope, p)

        result = self._compare('asymptotic', cases())
        if worst:
            result.details.update(worst_p=worst["p"], worst_scaled_deviation=str(worst["scaled"]))
        return result

    def _suite_symmetry(self) -> SuiteResult:
        partners = [((3,), (6,)), ((5,), (10,)), ((1, 3), (2, 6)), ((1, 4), (2, 4)),
                    ((1, 6), (2, 3)), ((3, 4), (4, 6))]

        def cases():
            for first, second in partners:
                n_tuple = cyclo.NTuple(first)
                yield f"dagger{n_tuple}", second, cyclo.dagger(n_tuple).entries
            for p in self._progress(self._primes(), "symmetry"):
                report = census(p)
                for first, second in partners:
                    yield f"o{first} = o{second} at p={p}", report.o(*first), report.o(*second)
                if report.assumptions_ok:
                    yield f"pair sum at p={p}", report.total, classno.census_total_from_pairs(report)
        return self._compare('symmetry', cases())

    def _suite_lattices(self) -> SuiteResult:
        def cases():
            yield "lattices(1, 2)", 3, oracle.count_eichler_lattices(1, 2)
            yield "lattices(1, 1)", 2, oracle.count_eichler_lattices(1, 1)
            for m in range(1, 11):
                yield f"lattices(0, {m})", 1, oracle.count_eichler_lattices(0, m)
            for n in range(21):
                yield f"lattices({n}, 1)", n + 1, oracle.count_eichler_lattices(n, 1)
            for n in range(7):
                for m in range(1, 7):
                    brute = sum(1 for _ in oracle.eichler_lattice_types(n, m))
                    yield f"enumerated lattices({n}, {m})", brute, oracle.count_eichler_lattices(n, m)
        return self._compare('lattices', cases())

    def _suite_orders(self) -> SuiteResult:
        def cases():
            for entries in cyclo.PAIR_TABLE:
                n_tuple = cyclo.NTuple(entries)
                prime = cyclo.nonmaximal_prime(n_tuple)
                support = {q for q, _ in factorize(cyclo.index_OK_over_A(n_tuple))}
                yield f"primes dividing [O_K : A{n_tuple}]", set() if prime is None else {prime}, support
            for p in self._progress(self._primes(2, VerifyConfig.ORDER_CHECK_BOUND), "orders"):
                maximal = quatalg.maximal_order(quatalg.make_algebra(p))
                yield f"maximal order axioms at p={p}", True, quatalg.verify_order_axioms(maximal.lattice)
                yield f"disc(O) at p={p}", p, maximal.discriminant
                for ell in (2, 3):
                    if ell == p:
                        continue
                    eichler = quatalg.eichler_order(maximal, ell)
                    yield f"disc(O^({ell})) at p={p}", p * ell, eichler.discriminant
                    yield f"[O : O^({ell})] at p={p}", ell, quatalg.lattice_index(eichler.lattice, maximal.lattice)
        return self._compare('orders', cases())
