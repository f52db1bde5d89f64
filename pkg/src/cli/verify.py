"""
Suíte de verificação: reproduz as constantes da torre de Sylvester

Cada grupo de VERIFY_CONFIG gera uma lista de checagens com valor esperado,
valor calculado e a procedência do valor esperado.
"""

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import mpmath

from src.errors import InputError, ModuliError
from src.fibers.analysis import boundary_preimage, classify_family, fiber_lct
from src.fibers.family import family_from_point
from src.fibers.places import vbar_at
from src.hodge.orbifold import audit_all, h11_brute, h11_fast, mu_check, scan, structure_audit
from src.newton.polyhedron import (NewtonSupport, blowup_discrepancy, diagonal_exit,
                                   lct_at_origin, verify_newton_lemma)
from src.polynomials.moduli_point import ModuliPoint, fermat
from src.polynomials.normalization import embed
from src.sylvester.context import (asymptotic_constants, count_positive, enumerate_positive,
                                   make_context, milnor_box_counts, weight)
from src.toric.wps import charts, crepant_ray, self_duality_witness
from src.utils.progress import ProgressIndicator, TaskTracker

logger = logging.getLogger(__name__)

M2_WEIGHTS = [4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42]
DIMENSIONS = {1: 1, 2: 10, 3: 251, 4: 151700, 5: 123769377141}


@dataclass
class Check:
    """Uma checagem: valor esperado, função de cálculo e procedência"""

    name: str
    expected: object
    provenance: str
    compute: Callable[[], object]
    compare: Optional[Callable[[object, object], bool]] = None

    def passes(self, computed: object) -> bool:
        if self.compare is not None:
            return self.compare(self.expected, computed)
        return computed == self.expected


@dataclass
class VerifyReport:
    """Relatório {checks, overall} da suíte"""

    level: str
    checks: List[Dict] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return 'pass' if all(c['status'] == 'pass' for c in self.checks) else 'fail'

    def failed(self) -> List[str]:
        return [c['name'] for c in self.checks if c['status'] != 'pass']

    def to_dict(self) -> Dict:
        return {'level': self.level, 'checks': self.checks, 'overall': self.overall}

    def rows(self) -> List[Dict]:
        """Linhas planas para exportação CSV/Parquet"""
        return [{key: str(value) for key, value in c.items()} for c in self.checks]


def _plain(value: object) -> object:
    """Valores JSON estáveis: racionais como "num/den", tuplas como listas"""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def _random_rational(rng: random.Random) -> Fraction:
    """Racional não nulo com numerador e denominador pequenos"""
    numerator = rng.choice([v for v in range(-9, 10) if v != 0])
    return Fraction(numerator, rng.randint(1, 6))


def _embed_m1_formulas(t1: Fraction, t0: Fraction) -> Dict:
    """Os onze coeficientes da imagem de (t_1, t_0) em M_2"""
    return {
        (0, 1, 4): t1,
        (0, 1, 3): Fraction(-4, 7) * t0 * t1,
        (0, 1, 2): Fraction(6, 49) * t0 ** 2 * t1,
        (0, 1, 1): Fraction(-4, 343) * t0 ** 3 * t1,
        (0, 1, 0): t0 ** 4 * t1 / 7 ** 4,
        (0, 0, 5): Fraction(-3, 7) * t0 ** 2,
        (0, 0, 4): Fraction(10, 49) * t0 ** 3,
        (0, 0, 3): Fraction(-15, 343) * t0 ** 4,
        (0, 0, 2): Fraction(12, 7 ** 4) * t0 ** 5,
        (0, 0, 1): Fraction(-5, 7 ** 5) * t0 ** 6,
        (0, 0, 0): Fraction(6, 7 ** 6) * t0 ** 7,
    }


def _within(tolerance: float) -> Callable[[object, object], bool]:
    return lambda expected, computed: abs(float(computed) - float(expected)) <= tolerance


# Grupos de checagens

def _sylvester_checks(settings: Dict) -> List[Check]:
    checks = [
        Check(f"sylvester.identities.n{n}", True, "Egyptian identity, coprimality, congruences",
              lambda n=n: all(make_context(n).identities().values()))
        for n in range(7)
    ]
    checks.append(Check("sylvester.s5", 3263443, "s_5 = 1 + 2·3·7·43·1807",
                        lambda: make_context(5).s[5]))
    checks.append(Check("sylvester.d_row.n3", [903, 602, 258, 42], "d_3 = 1806",
                        lambda: list(make_context(3).d_row)))
    return checks


def _dimension_checks(settings: Dict) -> List[Check]:
    checks = [
        Check(f"dimensions.dim.n{n}", DIMENSIONS[n], "dimension list 1, 10, 251, 151700, …",
              lambda n=n: count_positive(make_context(n), show_progress=False) - 1)
        for n in (1, 2, 3, 4)
    ]
    checks += [
        Check(f"dimensions.enumerate_vs_count.n{n}", True, "materialized list has N_n tuples",
              lambda n=n: len(enumerate_positive(make_context(n)))
              == count_positive(make_context(n), show_progress=False))
        for n in (0, 1, 2, 3)
    ]
    checks.append(Check("dimensions.signs.n2", {'positive': 11, 'negative': 1},
                        "11 positive monomials and one negative",
                        lambda: {k: v for k, v in milnor_box_counts(make_context(2)).items()
                                 if k in ('positive', 'negative')}))
    checks.append(Check("dimensions.signs.n3", {'positive': 252, 'negative': 252},
                        "252 positive and 252 negative monomials",
                        lambda: {k: v for k, v in milnor_box_counts(make_context(3)).items()
                                 if k in ('positive', 'negative')}))
    return checks


def _weight_checks(settings: Dict) -> List[Check]:
    return [
        Check("weights.M0", [2], "M_0 = P(2)",
              lambda: [t.weight for t in enumerate_positive(make_context(0))]),
        Check("weights.M1", [4, 6], "M_1 = P(4,6)",
              lambda: sorted(t.weight for t in enumerate_positive(make_context(1)))),
        Check("weights.M2", M2_WEIGHTS, "M_2 = P(4,10,…,42)",
              lambda: sorted(t.weight for t in enumerate_positive(make_context(2)))),
        Check("weights.excluded_t15", -2, "t_15 has weight −2",
              lambda: weight(make_context(2), (0, 1, 5))),
        Check("weights.M2_even", True, "weights of M_2 are even",
              lambda: all(t.weight % 2 == 0 for t in enumerate_positive(make_context(2)))),
    ]


def _embed_checks(settings: Dict) -> List[Check]:
    rng = random.Random(settings['random_seed'])
    samples = settings['samples']

    def m0_to_m1():
        for _ in range(samples):
            t = _random_rational(rng)
            image = embed(ModuliPoint(0, {(0,): t}))
            if image[(0, 1)] != -t ** 2 / 3 or image[(0, 0)] != 2 * t ** 3 / 27:
                return f"mismatch at t={t}"
        return True

    def m1_to_m2():
        for _ in range(samples):
            t1, t0 = _random_rational(rng), _random_rational(rng)
            image = embed(ModuliPoint(1, {(0, 1): t1, (0, 0): t0}))
            expected = _embed_m1_formulas(t1, t0)
            if image.coords != expected:
                return f"mismatch at (t1, t0) = ({t1}, {t0})"
        return True

    return [
        Check("embed.M0_t1", ["-1/3", "2/27"], "t_1 = −t²/3, t_0 = 2t³/27",
              lambda: _plain([embed(ModuliPoint(0, {(0,): 1}))[k] for k in ((0, 1), (0, 0))])),
        Check("embed.M0_random", True, "t_1 = −t²/3, t_0 = 2t³/27", m0_to_m1),
        Check("embed.M1_random", True, "eleven coefficient formulas of M_1 → M_2", m1_to_m2),
    ]


def _toric_checks(settings: Dict) -> List[Check]:
    checks = [
        Check("toric.chart.n2.j0", {'order': 21, 'weights': [1, 14, 6]}, "C^3/μ_21(1,14,6)",
              lambda: {k: v for k, v in charts(make_context(2))[0].to_dict().items()
                       if k in ('order', 'weights')}),
        Check("toric.reid.n<=5", True, "1 + Σ d_(n,k) ≡ 0 mod d_(n,j)",
              lambda: all(len(charts(make_context(n))) == n + 1 for n in range(6))),
        Check("toric.crepant.n2", [-3, -2, 0], "v_n' = (d_(n,n) v_n + v_(n+1))/s_n",
              lambda: list(crepant_ray(make_context(2)))),
        Check("toric.crepant.n<=5", True, "integral crepant ray with the v_n' relation",
              lambda: all(crepant_ray(make_context(n)) is not None for n in range(1, 6))),
    ]
    max_dim = 4 if settings.get('deep') else 3
    checks += [
        Check(f"toric.self_duality.n{n}", 1, "unimodular T with T(Δ) = Δ°",
              lambda n=n: abs(self_duality_witness(make_context(n)).determinant))
        for n in range(max_dim + 1)
    ]
    return checks


def _newton_checks(settings: Dict) -> List[Check]:
    checks = [
        Check(f"newton.fermat_lct.n{n}", _plain(1 - Fraction(1, make_context(n).d_n)),
              "lct(f) = Σ 1/s_k = 1 − 1/d_n",
              lambda n=n: _plain(lct_at_origin(NewtonSupport.from_poly(fermat(make_context(n))))))
        for n in range(1, 5)
    ]
    checks += [
        Check("newton.x2_y3", "6/5", "two-point LP, λ = (3/5, 2/5)",
              lambda: _plain(diagonal_exit(NewtonSupport.from_points([(2, 0), (0, 3)])).c)),
        Check("newton.discrepancy", "41/42", "ω = (21,14,6), ω(f) = 42",
              lambda: _plain(blowup_discrepancy([21, 14, 6], 42).ratio)),
    ]
    max_dim = settings.get('max_lemma_dim', 4)
    dims = (1, 2, 3) if settings.get('deep') else (1, 2)
    checks += [
        Check(f"newton.lemma.n{n}", True, "Σ w_k ≥ d_n, exhaustive scan",
              lambda n=n: verify_newton_lemma(make_context(n), max_dim=max_dim,
                                              show_progress=False).tuples > 0)
        for n in dims if n <= max_dim
    ]
    return checks


def _fiber_checks(settings: Dict) -> List[Check]:
    rng = random.Random(settings['random_seed'] + 1)
    samples = settings['samples']

    def boundary_detected():
        for _ in range(samples):
            source = ModuliPoint(1, {(0, 1): _random_rational(rng), (0, 0): _random_rational(rng)})
            image = embed(source)
            preimage = boundary_preimage(image)
            if preimage is None or preimage != source:
                return f"missed {source}"
        return True

    def interior_not_flagged():
        keys = [t.i for t in enumerate_positive(make_context(2))]
        for _ in range(samples):
            point = ModuliPoint(2, {i: _random_rational(rng) for i in keys})
            if boundary_preimage(point) is not None:
                return f"flagged {point}"
        return True

    def lct_plus_vbar():
        for _ in range(samples):
            source = ModuliPoint(1, {(0, 1): _random_rational(rng), (0, 0): _random_rational(rng)})
            fam = family_from_point(embed(source))
            for place, _ in classify_family(fam):
                if fiber_lct(fam, place) + vbar_at(fam, place).vbar != 1:
                    return f"lct + v̄ != 1 at {place.label()} for {source}"
        return True

    return [
        Check("fibers.boundary_images", True, "embed images have v̄ = 1 and round-trip",
              boundary_detected),
        Check("fibers.interior_points", True, "generic points are interior",
              interior_not_flagged),
        Check("fibers.lct_plus_vbar", True, "lct = 1 − v̄", lct_plus_vbar),
    ]


def _hodge_checks(settings: Dict) -> List[Check]:
    ctx3 = make_context(3)
    return [
        Check("hodge.h11_brute.n3", 251, "h^{1,1} = dim M_3", lambda: h11_brute(ctx3)),
        Check("hodge.h11_fast.n3", 251, "N(0) = dim M_3", lambda: h11_fast(ctx3)),
        Check("hodge.N_ell_zero.n3", [], "N(ℓ) = 0 for ℓ > 0",
              lambda: scan(ctx3, show_progress=False).nonzero_ell),
        Check("hodge.audit.n3", ctx3.d_n - 1, "every ℓ > 0 eliminated at a gate",
              lambda: sum(audit_all(ctx3).values())),
        Check("hodge.audit.half_d", True, "ℓ = d/2 eliminated",
              lambda: structure_audit(ctx3, ctx3.d_n // 2).N == 0),
        Check("hodge.mu.n3", True, "μ = positive + negative",
              lambda: mu_check(ctx3)['consistent']),
    ]


def _asymptotic_checks(settings: Dict) -> List[Check]:
    cache: Dict = {}

    def estimate():
        if 'value' not in cache:
            cache['value'] = asymptotic_constants(
                5, max_count_level=settings.get('max_count_level', 5),
                precision=settings.get('asymptotic_precision', 30),
                threads=settings.get('threads', 1))
        return cache['value']

    return [
        Check("asymptotics.c", "1.264", "c = 1.264…", lambda: mpmath.nstr(estimate().c, 8),
              _within(0.001)),
        Check("asymptotics.a", "0.2789", "a = 0.2789…", lambda: mpmath.nstr(estimate().a, 8),
              _within(0.001)),
        Check("asymptotics.ratio.n5", "1", "(dim M_5 + 1)·4!/∏(s_k − 1) ≈ 1",
              lambda: str(float(estimate().ratio)), _within(0.01)),
    ]


def _deep_checks(settings: Dict) -> List[Check]:
    threads = settings.get('threads', 1)
    ctx4, ctx5 = make_context(4), make_context(5)
    return [
        Check("deep.dim.n5", DIMENSIONS[5], "dimension list",
              lambda: count_positive(ctx5, threads=threads) - 1),
        Check("deep.h11_brute.n4", DIMENSIONS[4], "h^{1,1} = dim M_4",
              lambda: h11_brute(ctx4, threads=threads)),
        Check("deep.h11_fast.n4", DIMENSIONS[4], "N(0) = dim M_4",
              lambda: h11_fast(ctx4, threads=threads)),
        Check("deep.h11_fast.n5", DIMENSIONS[5], "N(0) = dim M_5",
              lambda: h11_fast(ctx5, threads=threads)),
    ]


GROUPS: Dict[str, Callable[[Dict], List[Check]]] = {
    'sylvester': _sylvester_checks,
    'dimensions': _dimension_checks,
    'weights': _weight_checks,
    'embed': _embed_checks,
    'toric': _toric_checks,
    'newton': _newton_checks,
    'fibers': _fiber_checks,
    'hodge': _hodge_checks,
    'asymptotics': _asymptotic_checks,
    'deep': _deep_checks,
}


def run_check(check: Check, tracker: TaskTracker) -> Dict:
    """Executa uma checagem; exceções do domínio viram falha com a mensagem"""
    tracker.add_task(check.name, check.provenance)
    tracker.start_task(check.name)
    try:
        computed = check.compute()
        ok = check.passes(computed)
    except (ModuliError, ArithmeticError, ValueError) as e:
        logger.error(f"{check.name}: {type(e).__name__}: {e}")
        computed, ok = f"{type(e).__name__}: {e}", False

    if ok:
        tracker.complete_task(check.name)
    else:
        tracker.fail_task(check.name, str(computed))
    return {
        'name': check.name,
        'expected': _plain(check.expected),
        'computed': _plain(computed),
        'status': 'pass' if ok else 'fail',
        'elapsed_ms': tracker.elapsed_ms(check.name),
        'provenance': check.provenance
    }


def cmd_verify(level: str, settings: Dict, threads: int = 1,
               quiet: bool = False) -> VerifyReport:
    """
    Roda os grupos do nível pedido

    Args:
        level: 'quick' ou 'full'
        settings: VERIFY_CONFIG efetivo
        threads: Processos das varreduras longas
        quiet: Suprime tabela e status em stderr

    Returns:
        VerifyReport; a ordem das checagens é fixa
    """
    if level not in ('quick', 'full'):
        raise InputError(f"Nível desconhecido: {level}")
    groups = settings[level]
    options = dict(settings, threads=threads, deep=(level == 'full'))

    indicator = ProgressIndicator(quiet=quiet)
    tracker = TaskTracker(quiet=quiet)
    report = VerifyReport(level=level)
    start = time.perf_counter()

    for step, group in enumerate(groups, 1):
        if group not in GROUPS:
            raise InputError(f"Grupo de verificação desconhecido: {group}")
        indicator.print_step(step, len(groups), group)
        for check in GROUPS[group](options):
            report.checks.append(run_check(check, tracker))

    indicator.show_table(
        f"Verificação {level}",
        ["Checagem", "Esperado", "Calculado", "Status", "ms"],
        [[c['name'], c['expected'], c['computed'], c['status'], c['elapsed_ms']]
         for c in report.checks]
    )
    tracker.display_summary()
    elapsed = time.perf_counter() - start
    if report.overall == 'pass':
        indicator.show_status(f"{len(report.checks)} checagens aprovadas em {elapsed:.1f}s", "success")
    else:
        indicator.show_status(f"Falharam: {', '.join(report.failed())}", "error")
    logger.info(f"verify {level}: {report.overall} ({len(report.checks)} checagens)")
    return report
