"""
Comandos da linha de comando

Cada comando devolve um dicionário pronto para JSON (racionais como
"num/den", chaves ordenadas) e a conversão para linhas de tabela.
"""

import logging
import time
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.errors import CapExceededError, InputError, LatticeError
from src.fibers.analysis import boundary_preimage, classify_family, level
from src.fibers.family import CurveFamily, family_from_point
from src.hodge.orbifold import hodge_report
from src.newton.polyhedron import diagonal_exit, lct_at_origin, support_of, toric_classify
from src.polynomials.moduli_point import ModuliPoint
from src.polynomials.multipoly import MultiPoly
from src.polynomials.normalization import embed
from src.sylvester.context import (count_positive, enumerate_positive, make_context,
                                   weight_table)
from src.toric.wps import build_simplex, charts, crepant_ray, self_duality_witness
from src.utils.rationals import format_fraction, to_fraction

logger = logging.getLogger(__name__)

TableRows = Tuple[str, List[str], List[List]]


def cmd_dim(n: int, cap: int, threads: int = 1, show_progress: bool = True) -> Dict:
    """
    dim M_n, N_n e o multiconjunto de pesos quando N_n ≤ cap

    Args:
        n: Dimensão
        cap: Limite de materialização
        threads: Processos para a contagem
        show_progress: Barra tqdm da contagem

    Returns:
        {n, dim, N, weights}; weights é None acima do limite
    """
    ctx = make_context(n)
    total = count_positive(ctx, threads=threads, show_progress=show_progress)
    result = {'n': n, 'dim': total - 1, 'N': total, 'weights': None}
    if total <= cap:
        result['weights'] = sorted(t.weight for t in enumerate_positive(ctx, cap=cap))
    else:
        logger.info(f"N_{n} = {total} acima do limite {cap}: só a contagem")
        result['note'] = f"weights not materialized (N > cap = {cap})"
    return result


def dim_rows(n: int, cap: int) -> List[Dict]:
    """Linhas (tupla, peso) para --out .csv/.parquet"""
    return weight_table(make_context(n), cap=cap)


def cmd_embed(data: Mapping) -> Dict:
    """Ponto de M_{n-1} em JSON para o seu mergulho em M_n"""
    point = ModuliPoint.from_dict(data)
    return embed(point).to_dict()


def read_family(data: Mapping) -> Tuple[CurveFamily, Optional[ModuliPoint]]:
    """
    Aceita JSON de CurveFamily ({n, coeffs}) ou de ModuliPoint ({n, coords})

    Returns:
        (família, ponto de origem ou None)
    """
    if not isinstance(data, Mapping):
        raise InputError("Entrada JSON deve ser um objeto")
    if 'coeffs' in data:
        return CurveFamily.from_dict(data), None
    if 'coords' in data:
        point = ModuliPoint.from_dict(data)
        return family_from_point(point), point
    raise InputError("JSON sem 'coeffs' (família) nem 'coords' (ponto)")


def cmd_classify(data: Mapping) -> Dict:
    """
    Tipo (v̄, nível, val Δ) e lct de cada fibra especial

    Para entrada de ponto inclui também o nível do próprio ponto e a
    pré-imagem de bordo, quando existe.
    """
    fam, point = read_family(data)
    rows = []
    for place, ftype in classify_family(fam):
        row = {'place': place.label(), 'poly': place.to_dict()['poly']}
        row.update(ftype.to_dict())
        rows.append(row)
    result = {'n': fam.n, 'family': fam.to_dict(), 'places': rows}
    if point is not None:
        preimage = boundary_preimage(point)
        result['boundary_preimage'] = preimage.to_dict() if preimage is not None else None
        result['level'] = level(point)
    logger.info(f"Família n={fam.n}: {len(rows)} fibras especiais")
    return result


def cmd_lct(text: str, base_point: Optional[Sequence] = None,
            assume_nondegenerate: bool = False) -> Dict:
    """
    lct de f no ponto base pela saída diagonal, com os certificados

    Args:
        text: Polinômio no formato "num/den : e_0 … e_k"
        base_point: Coordenadas racionais do ponto; origem por omissão
        assume_nondegenerate: Repassado a toric_classify

    Returns:
        {lct, c, certificate, classification}
    """
    poly = MultiPoly.from_text(text)
    point = [to_fraction(v) for v in base_point] if base_point else None
    support = support_of(poly, point)
    exit_ = diagonal_exit(support)
    classification = toric_classify(support, assume_nondegenerate=assume_nondegenerate)
    return {
        'nvars': poly.nvars,
        'base_point': [format_fraction(v) for v in point] if point else None,
        'support': [list(p) for p in support.points],
        'lct': format_fraction(lct_at_origin(support)),
        'c': format_fraction(exit_.c),
        'certificate': exit_.to_dict(),
        'classification': classification.to_dict()
    }


def cmd_toric(n: int, max_witness_dim: int = 5) -> Dict:
    """Simplexo, cartas, raio crepante e testemunha de autodualidade"""
    ctx = make_context(n)
    result = {
        'n': n,
        'weights': list(ctx.ambient_weights),
        'simplex': build_simplex(ctx).to_dict(),
        'charts': [c.to_dict() for c in charts(ctx)],
        'crepant_ray': list(crepant_ray(ctx)) if n >= 1 else None
    }
    try:
        result['witness'] = self_duality_witness(ctx, max_dim=max_witness_dim).to_dict()
    except (CapExceededError, LatticeError) as e:
        logger.warning(f"Sem testemunha de autodualidade: {e}")
        result['witness'] = None
        result['witness_note'] = str(e)
    return result


def cmd_hodge(n: int, method: str = "auto", threads: int = 1,
              max_brute_dim: int = 4, chunk_size: int = 200_000) -> Dict:
    """Relatório {n, h11, method, elapsed_ms, gates}"""
    start = time.perf_counter()
    report = hodge_report(make_context(n), method=method, threads=threads,
                          max_brute_dim=max_brute_dim, chunk_size=chunk_size)
    report['elapsed_ms'] = int(round((time.perf_counter() - start) * 1000))
    return report


def as_table(command: str, result: Union[Dict, List]) -> TableRows:
    """
    Converte o resultado de um comando em (título, cabeçalhos, linhas)

    Args:
        command: Nome do subcomando
        result: Dicionário devolvido pelo comando

    Returns:
        Tripla para ProgressIndicator.create_table
    """
    if command == 'dim':
        weights = result['weights']
        return (f"M_{result['n']}", ["Campo", "Valor"], [
            ["dim", result['dim']],
            ["N", result['N']],
            ["pesos", " ".join(map(str, weights)) if weights is not None else "-"]
        ])
    if command == 'embed':
        return (f"Ponto de M_{result['n']}", ["Coordenada", "Valor"],
                [[k, v] for k, v in result['coords'].items()])
    if command == 'classify':
        rows = [[r['place'], r['vbar'], r['level'], r['disc_val'], r['lct']]
                for r in result['places']]
        return (f"Fibras especiais (n={result['n']})",
                ["Lugar", "v̄", "Nível", "val Δ", "lct"], rows)
    if command == 'lct':
        cls = result['classification']
        return ("Limiar log canônico", ["Campo", "Valor"], [
            ["lct", result['lct']],
            ["c", result['c']],
            ["classe", cls['label']],
            ["veredicto", cls['verdict']],
            ["ω / ω(f)", f"{cls['omega']} / {cls['omega_f']}"]
        ])
    if command == 'toric':
        rows = [[f"carta {c['j']}", f"μ_{c['order']} {c['weights']}"] for c in result['charts']]
        rows.append(["raio crepante", result['crepant_ray']])
        witness = result['witness']
        rows.append(["autodualidade", witness['permutation'] if witness else result.get('witness_note')])
        return (f"P{tuple(result['weights'])}", ["Campo", "Valor"], rows)
    if command == 'hodge':
        rows = [["h11", result['h11']], ["método", result['method']],
                ["tempo (ms)", result['elapsed_ms']]]
        for gate, count in result.get('gates', {}).items():
            rows.append([f"porta {gate}", count])
        return (f"h^(1,1) orbifold (n={result['n']})", ["Campo", "Valor"], rows)
    raise InputError(f"Comando sem tabela: {command}")
