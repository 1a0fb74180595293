"""
Subcommand implementations shared by the command line and the HTTP API.

Each command takes the decoded request payload ({"input": ..., "other": ...})
and a CommandOptions, and returns a CommandResult whose holds flag decides
the exit code or HTTP verdict.
"""

import logging
from dataclasses import dataclass, fields
from typing import Optional

from . import serialization as wire
from .designs import design_verify
from .equivalence import switching_equiv, unitary_equiv
from .errors import (
    BetaNotRoot,
    CompleteOrEmpty,
    HypothesisViolated,
    InvalidInputError,
    NotEquiangular,
)
from .frames import (
    character_certifies_tight,
    discriminant_class,
    equiangular_of,
    etf_verify,
    frame_status,
    gerzon_check,
    gram_realize,
    naimark_report,
    tightness_conditions,
    trace_identity,
)
from .gf import (
    as_element,
    canonical_nonsquare,
    sqrt_or_none,
    unimodular_elements,
)
from .incoherence import (
    IncoherentSet,
    design_extract,
    gamma_analyze,
    incoherence_lemma_check,
    incoherence_number,
    incoherent_split_sum,
)
from .search import search_equiangular
from .simplices import simplex_enumerate, simplex_necessary
from .twographs import (
    descendant_graph,
    etf_twograph_correspond,
    graph_two_graph,
    srg_check,
    two_graph_of,
    two_graph_regularity,
)

logger = logging.getLogger(__name__)


@dataclass
class CommandOptions:
    strategy: str = 'auto'
    beta: Optional[object] = None
    s: Optional[list] = None
    t: Optional[int] = None
    modular_p: Optional[int] = None
    dedup: Optional[str] = None
    scale: int = 1
    gamma: Optional[list] = None
    outside: Optional[int] = None
    budget: Optional[int] = None
    workers: int = 1

    @classmethod
    def from_dict(cls, values):
        if values is None:
            values = {}
        if not isinstance(values, dict):
            raise InvalidInputError("options must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise InvalidInputError(f"unknown option(s): {', '.join(unknown)}")
        return cls(**values)


@dataclass
class CommandResult:
    report: dict
    holds: bool


def _input(payload, key='input'):
    document = payload.get(key)
    if document is None:
        raise InvalidInputError(f"request has no {key!r} document")
    return document


def _beta(fs, options):
    """Explicit beta, or the canonical root of b."""
    if options.beta is not None:
        return as_element(fs.field, options.beta)
    params = equiangular_of(fs)
    if params is None or params.b is None:
        raise NotEquiangular("a default beta needs an equiangular system of at least two vectors")
    root = sqrt_or_none(fs.field, params.b, plain=True)
    if root is None:
        raise BetaNotRoot(f"b = {int(params.b)} has no square root; pass beta explicitly")
    return root


def _gerzon(fs, params):
    if params is None or params.b is None or int(params.a * params.a) == int(params.b):
        return None
    report = gerzon_check(fs.n, fs.d, fs.field.case, params)
    return {'bound': report.bound, 'within': report.within, 'saturated': report.saturated}


def run_field(payload, options):
    field = wire.field_from_json(_input(payload))
    nonsquare = canonical_nonsquare(field)
    report = {
        'field': wire.field_to_json(field),
        'order': field.order,
        'case': field.case,
        'fixed_order': field.fixed_order,
        'canonical_nonsquare': wire.element_to_json(field, nonsquare),
        'unimodular_count': len(unimodular_elements(field)),
    }
    return CommandResult(report, True)


def run_verify(payload, options):
    fs = wire.frame_from_json(_input(payload))
    field = fs.field
    status = frame_status(fs)
    params = equiangular_of(fs)
    report = {
        'frame': wire.frame_to_json(fs),
        'n': fs.n,
        'd': fs.d,
        'status': wire.tightness_to_json(field, status),
        'equiangular': wire.params_to_json(field, params),
        'gerzon': _gerzon(fs, params),
        'trace_identity': trace_identity(fs),
        'discriminant_class': None if field.is_unitary else discriminant_class(fs).value,
    }
    return CommandResult(report, status.is_frame_for_ambient)


def run_tight(payload, options):
    fs = wire.frame_from_json(_input(payload))
    status = frame_status(fs)
    conditions = None
    if status.c is not None:
        conditions = dict(zip(('frame_operator', 'synthesis', 'gram'),
                              tightness_conditions(fs, status.c)))
    report = {
        'frame': wire.frame_to_json(fs),
        'status': wire.tightness_to_json(fs.field, status),
        'conditions': conditions,
        'character_certified': character_certifies_tight(fs),
    }
    return CommandResult(report, status.tight)


def run_etf(payload, options):
    fs = wire.frame_from_json(_input(payload))
    etf = etf_verify(fs)
    report = wire.etf_to_json(fs.field, etf)
    report['gerzon'] = _gerzon(fs, etf.params)
    report['frame'] = wire.frame_to_json(fs)
    return CommandResult(report, etf.verdict)


def run_realize(payload, options):
    field, gram, case, ambient_dim = wire.gram_input_from_json(_input(payload))
    fs = gram_realize(field, gram, case, ambient_dim)
    report = {
        'frame': wire.frame_to_json(fs),
        'n': fs.n,
        'd': fs.d,
        'discriminant_class': None if field.is_unitary else discriminant_class(fs).value,
    }
    return CommandResult(report, True)


def run_naimark(payload, options):
    fs = wire.frame_from_json(_input(payload))
    report = naimark_report(fs, options.scale)
    body = wire.naimark_to_json(fs.field, report)
    body['frame'] = wire.frame_to_json(fs)
    return CommandResult(body, report.passed)


def run_equiv(payload, options):
    fs_a = wire.frame_from_json(_input(payload))
    fs_b = wire.frame_from_json(_input(payload, 'other'))
    certificate = switching_equiv(fs_a, fs_b, options.strategy)
    unitary = unitary_equiv(fs_a, fs_b)
    report = {
        'switching': wire.certificate_to_json(fs_a.field, certificate),
        'unitary': {'equivalent': unitary.equivalent, 'reason': unitary.reason},
        'frame': wire.frame_to_json(fs_a),
        'other': wire.frame_to_json(fs_b),
    }
    return CommandResult(report, certificate.equivalent)


def _descendant_srg(tg):
    if tg.n < 2:
        return None
    try:
        return wire.srg_to_json(srg_check(descendant_graph(tg, 1)))
    except CompleteOrEmpty as e:
        return {'holds': False, 'params': None, 'reason': str(e)}


def _twograph_of_graph(document, options):
    adjacency, modular_p = wire.graph_from_json(document)
    modular_p = options.modular_p or modular_p
    tg = graph_two_graph(adjacency)
    regularity = two_graph_regularity(tg)
    try:
        srg = wire.srg_to_json(srg_check(adjacency, modular_p))
    except CompleteOrEmpty as e:
        srg = {'holds': False, 'params': None, 'reason': str(e)}
    report = {
        'two_graph': wire.two_graph_to_json(None, tg),
        'regularity': wire.regularity_to_json(regularity),
        'graph_srg': srg,
        'descendant_srg': _descendant_srg(tg),
    }
    return CommandResult(report, regularity.params.regular)


def run_twograph(payload, options):
    document = _input(payload)
    if isinstance(document, dict) and 'adjacency' in document:
        return _twograph_of_graph(document, options)
    if isinstance(document, dict) and 'coherent' in document:
        tg = wire.two_graph_from_json(document)
        field, frame = None, None
    else:
        fs = wire.frame_from_json(document)
        field, frame = fs.field, wire.frame_to_json(fs)
        tg = two_graph_of(fs, _beta(fs, options))

    regularity = two_graph_regularity(tg)
    report = {
        'two_graph': wire.two_graph_to_json(field, tg),
        'regularity': wire.regularity_to_json(regularity),
        'descendant_srg': _descendant_srg(tg) if regularity.params.regular else None,
    }
    if frame is not None:
        report['frame'] = frame
        try:
            correspondence = etf_twograph_correspond(fs, tg.beta)
            report['correspondence'] = {
                'etf': correspondence.etf,
                'regular': correspondence.regular,
                'agree': correspondence.agree,
                'n_even': correspondence.n_even,
            }
        except HypothesisViolated as e:
            report['correspondence'] = {'skipped': str(e)}
    return CommandResult(report, regularity.params.regular)


def run_simplex(payload, options):
    fs = wire.frame_from_json(_input(payload))
    records = simplex_enumerate(fs, options.s)
    params = equiangular_of(fs)
    sizes = options.s or range(2, fs.d + 1)
    etf = etf_verify(fs).verdict
    necessary = {}
    for s in sizes:
        check = simplex_necessary(fs.n, fs.d, int(s), params, etf=etf)
        necessary[str(s)] = {'squares': check.squares, 'etf_congruence': check.etf_congruence,
                             'possible': check.possible}
    counts = {}
    for record in records:
        by_class = counts.setdefault(str(record.s), {})
        by_class[record.discriminant.value] = by_class.get(record.discriminant.value, 0) + 1
    report = {
        'frame': wire.frame_to_json(fs),
        'count': len(records),
        'counts': counts,
        'necessary': necessary,
        'simplices': [wire.simplex_to_json(fs.field, record) for record in records],
    }
    holds = all(r.discriminant_matches and r.criteria is not False for r in records)
    return CommandResult(report, holds)


def run_incoherence(payload, options):
    fs = wire.frame_from_json(_input(payload))
    beta = _beta(fs, options)
    result = incoherence_number(fs, beta)
    lemma = incoherence_lemma_check(fs, result.witness)
    report = wire.incoherence_to_json(fs.field, result)
    report['lemma'] = wire.lemma_to_json(lemma)
    report['frame'] = wire.frame_to_json(fs)
    return CommandResult(report, result.bound_holds is not False and lemma.holds)


def run_design(payload, options):
    points, blocks, t = wire.design_input_from_json(_input(payload))
    t = options.t or t or 2
    design = design_verify(points, blocks, t)
    return CommandResult(wire.design_to_json(design), design.is_design)


def _gamma_set(fs, beta, options):
    if options.gamma:
        return IncoherentSet(tuple(int(j) for j in options.gamma), beta, True)
    witness = incoherence_number(fs, beta).witness
    logger.info("gamma: using incoherent witness %s", list(witness.indices))
    return witness


def run_gamma(payload, options):
    fs = wire.frame_from_json(_input(payload))
    beta = _beta(fs, options)
    gamma_set = _gamma_set(fs, beta, options)
    extraction = design_extract(fs, gamma_set)
    outside = options.outside
    if outside is None:
        outside = next(g for g in range(1, fs.n + 1) if g not in gamma_set.indices)
    analysis = gamma_analyze(fs, gamma_set, outside)
    split_sum = incoherent_split_sum(fs, gamma_set)
    report = wire.extraction_to_json(extraction)
    report['analysis'] = wire.gamma_to_json(fs.field, analysis)
    report['frame'] = wire.frame_to_json(fs)
    holds = (extraction.holds and split_sum.holds and analysis.root_check
             and analysis.intersection_check)
    return CommandResult(report, holds)


def run_search(payload, options):
    spec = wire.search_spec_from_json(_input(payload))
    if options.dedup is not None:
        spec.dedup = options.dedup
    if options.budget is not None:
        spec.budget = options.budget
    spec.workers = options.workers
    result = search_equiangular(spec)
    return CommandResult(wire.search_result_to_json(spec, result), result.count > 0)


COMMANDS = {
    'field': run_field,
    'verify': run_verify,
    'tight': run_tight,
    'etf': run_etf,
    'realize': run_realize,
    'naimark': run_naimark,
    'equiv': run_equiv,
    'twograph': run_twograph,
    'simplex': run_simplex,
    'incoherence': run_incoherence,
    'design': run_design,
    'gamma': run_gamma,
    'search': run_search,
}


def run_command(name, payload, options=None):
    """Dispatch one subcommand by name."""
    if name not in COMMANDS:
        raise InvalidInputError(f"unknown command {name!r}")
    if not isinstance(options, CommandOptions):
        options = CommandOptions.from_dict(options)
    logger.info("running %s", name)
    result = COMMANDS[name](payload, options)
    logger.info("%s finished: holds=%s", name, result.holds)
    return result
