"""
JSON wire format for fields, frames, two-graphs, designs and search specs,
plus the report encoders the CLI and the HTTP API share.

Field elements are written as bare integers in prime fields and as
little-endian coefficient lists in extension fields. Every frame-derived
report embeds its input under "frame", so a report can be read back as input.
"""

import json
import logging
import sys

import numpy as np

from . import linalg
from .errors import FFFramesError, InvalidInputError
from .frames import frame_make
from .geometry import space_make
from .gf import field_make
from .search import SearchSpec
from .twographs import two_graph_make

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- files

def load_json(path):
    """Read a JSON document from a path, or from standard input for '-'."""
    try:
        if path == '-':
            return json.load(sys.stdin)
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e}") from e


def dump_json(report, path=None):
    text = json.dumps(report, indent=2)
    if path is None or path == '-':
        sys.stdout.write(text + '\n')
        return
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text + '\n')
    logger.debug("dump_json: wrote %s", path)


# ---------------------------------------------------------------- parsers

def _parsed(kind, impl, obj):
    """Run a pure parser, re-raising malformed documents as InvalidInputError."""
    try:
        value = impl(obj)
    except FFFramesError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as e:
        logger.warning("malformed %s document: %s", kind, e)
        raise InvalidInputError(f"malformed {kind}: {e!r}") from e
    logger.debug("parsed %s", kind)
    return value


def _unwrap(obj, key):
    """Reports carry their input under a key; accept either shape."""
    if not isinstance(obj, dict):
        raise TypeError(f"expected a JSON object, got {type(obj).__name__}")
    return obj[key] if key in obj and isinstance(obj[key], dict) else obj


def _field_from_json_impl(obj):
    obj = _unwrap(obj, 'field')
    return field_make(
        obj['p'],
        obj.get('degree', 1),
        obj.get('modulus'),
        obj.get('involution', 'identity'),
    )


def field_from_json(obj):
    return _parsed('field', _field_from_json_impl, obj)


def _form_for(field, obj, dim):
    if obj.get('form') is None:
        return linalg.identity(field.GF, dim)
    return field.matrix(obj['form'])


def _frame_from_json_impl(obj):
    obj = _unwrap(obj, 'frame')
    field = _field_from_json_impl(obj['field'])
    vectors = field.matrix(obj['vectors'])
    form = _form_for(field, obj, vectors.shape[0])
    return frame_make(space_make(field, form), vectors)


def frame_from_json(obj):
    """FrameSystem from {"field", "form"?, "vectors"} or any report holding "frame"."""
    return _parsed('frame', _frame_from_json_impl, obj)


def _gram_input_impl(obj):
    field = _field_from_json_impl(obj['field'])
    gram = field.matrix(obj['gram'])
    return field, gram, obj.get('case', 'auto'), obj.get('ambient_dim')


def gram_input_from_json(obj):
    """(field, gram, case, ambient_dim) from {"field", "gram", "case"?, "ambient_dim"?}."""
    return _parsed('gram', _gram_input_impl, obj)


def _two_graph_from_json_impl(obj):
    obj = _unwrap(obj, 'two_graph')
    return two_graph_make(int(obj['n']), [tuple(t) for t in obj['coherent']])


def two_graph_from_json(obj):
    return _parsed('two-graph', _two_graph_from_json_impl, obj)


def _design_from_json_impl(obj):
    obj = _unwrap(obj, 'design')
    points = obj.get('points', obj.get('n_points'))
    return int(points), [list(block) for block in obj['blocks']], obj.get('t')


def design_input_from_json(obj):
    """(points, blocks, t or None) from {"points", "blocks", "t"?} or a design report."""
    return _parsed('design', _design_from_json_impl, obj)


def _graph_from_json_impl(obj):
    adjacency = np.asarray(obj['adjacency'], dtype=np.int64)
    return adjacency, obj.get('modular_p')


def graph_from_json(obj):
    return _parsed('graph', _graph_from_json_impl, obj)


def _search_spec_from_json_impl(obj):
    field = _field_from_json_impl(obj['field'])
    if obj.get('form') is not None:
        form = field.matrix(obj['form'])
    else:
        form = linalg.identity(field.GF, int(obj['dim']))
    n_target = obj.get('n_target')
    if n_target in ('max', None):
        n_target = None
    return SearchSpec(
        field=field,
        form=form,
        a=field.element(obj['a']),
        b=field.element(obj['b']),
        n_target=None if n_target is None else int(n_target),
        mode=obj.get('mode', 'all'),
        dedup=obj.get('dedup', 'projective'),
        etf_only=bool(obj.get('etf_only', False)),
        node_budget=None if obj.get('node_budget') is None else int(obj['node_budget']),
    )


def search_spec_from_json(obj):
    """SearchSpec from {"field", "form" or "dim", "a", "b", "n_target"?, "mode"?,
    "dedup"?, "etf_only"?, "node_budget"?}. Budget and workers come from configuration;
    the node budget defaults to the candidate budget."""
    return _parsed('search spec', _search_spec_from_json_impl, obj)


# ---------------------------------------------------------------- encoders

def field_to_json(field):
    return {
        'p': field.p,
        'degree': field.m,
        'modulus': list(field.modulus),
        'involution': field.involution.value,
    }


def element_to_json(field, x):
    return None if x is None else field.encode(x)


def matrix_to_json(field, M):
    return [[field.encode(v) for v in row] for row in M.view(np.ndarray).tolist()]


def frame_to_json(fs):
    return {
        'field': field_to_json(fs.field),
        'form': matrix_to_json(fs.field, fs.space.form),
        'vectors': matrix_to_json(fs.field, fs.synthesis),
    }


def params_to_json(field, params):
    if params is None:
        return None
    return {'a': element_to_json(field, params.a), 'b': element_to_json(field, params.b)}


def tightness_to_json(field, report):
    return {
        'status': report.status,
        'tight': report.tight,
        'c': element_to_json(field, report.c),
        'c_ambiguous': report.c_ambiguous,
        'is_frame_for_ambient': report.is_frame_for_ambient,
        'is_frame_for_span': report.is_frame_for_span,
        'totally_isotropic_tight': report.totally_isotropic_tight,
        'span_dim': report.span_dim,
        'n': report.n,
    }


def etf_to_json(field, report):
    return {
        'verdict': report.verdict,
        'params': params_to_json(field, report.params),
        'c': element_to_json(field, report.c),
        'n': report.n,
        'd': report.d,
        'tight': report.tight,
        'welch_holds': report.welch_holds,
        'triple_sum_holds': report.triple_sum_holds,
        'triple_sum_failures': report.triple_sum_failures,
        'criteria_applicable': report.criteria_applicable,
        'certified_by_criteria': report.certified_by_criteria,
        'character_certified': report.character_certified,
        'acan1b_holds': report.acan1b_holds,
        'failure_reasons': report.failure_reasons,
    }


def naimark_to_json(field, report):
    return {
        'passed': report.passed,
        'failures': report.failures,
        'c': element_to_json(field, report.c),
        'scale': element_to_json(field, report.scale),
        'complement_dim': report.complement.d,
        'checks': {
            'gram_identity': report.gram_identity,
            'orthogonal': report.orthogonal,
            'dimension': report.dimension,
            'tight': report.tight,
            'kernel_identity': report.kernel_identity,
            'discriminant_law': report.discriminant_law,
            'etf': report.etf,
        },
        'complement': frame_to_json(report.complement),
    }


def certificate_to_json(field, certificate):
    return {
        'equivalent': certificate.equivalent,
        'strategy': certificate.strategy,
        't_diag': None if certificate.t_diag is None
        else [field.encode(t) for t in certificate.t_diag],
        'obstruction': certificate.obstruction,
    }


def two_graph_to_json(field, tg):
    return {
        'n': tg.n,
        'coherent': [list(t) for t in tg.coherent],
        'beta': element_to_json(field, tg.beta) if field is not None else None,
    }


def regularity_to_json(report):
    return {
        'regular': report.params.regular,
        'ell': report.params.ell,
        'm_quad': report.params.m_quad,
        'seidel': report.seidel.entries.tolist(),
        'seidel_two_eigenvalues': report.analysis.two_eigenvalues,
        'seidel_alpha': report.analysis.alpha,
        'seidel_gamma': report.analysis.gamma,
        'consistent': report.consistent,
    }


def srg_to_json(result):
    params = result.params
    return {
        'holds': result.holds,
        'params': None if params is None else {
            'v': params.v, 'k': params.k, 'lambda': params.lam, 'mu': params.mu,
            'modular': params.modular,
        },
        'reason': result.reason,
    }


def design_to_json(design):
    return {
        'points': design.n_points,
        'blocks': [list(block) for block in design.blocks],
        't': design.t,
        'k': design.k,
        'lambda': design.lam,
        'r': design.r,
        'b': design.b,
        'is_design': design.is_design,
        'label': design.label(),
        'intersection_numbers': list(design.intersection_numbers),
        'quasi_symmetric': design.quasi_symmetric,
        'symmetric': design.symmetric,
        'counting_identities': design.counting_identities,
        'fisher_holds': design.fisher_holds,
        'uncovered': None if design.uncovered is None else list(design.uncovered),
    }


def simplex_to_json(field, record):
    return {
        'kappa': list(record.kappa),
        's': record.s,
        'c_prime': element_to_json(field, record.c_prime),
        'discriminant': record.discriminant.value,
        'predicted_discriminant': None if record.predicted_discriminant is None
        else record.predicted_discriminant.value,
        'discriminant_matches': record.discriminant_matches,
        'criteria': record.criteria,
    }


def incoherence_to_json(field, result):
    return {
        'inc': result.inc,
        'witness': list(result.witness.indices),
        'beta': element_to_json(field, result.witness.beta),
        'witness_independent': result.witness.linearly_independent,
        'inc_negated': result.inc_negated,
        'inc_min': result.inc_min,
        'bound_applicable': result.bound_applicable,
        'bound_holds': result.bound_holds,
        'nodes': result.nodes,
    }


def lemma_to_json(check):
    return {
        'holds': check.holds,
        'applicable': check.applicable,
        'independent': check.independent,
        'minimally_dependent': check.minimally_dependent,
        'size_within_bound': check.size_within_bound,
        'simplex_relation': check.simplex_relation,
    }


def gamma_to_json(field, report):
    return {
        'outside': report.outside,
        'gamma1': list(report.gamma1),
        'gamma2': list(report.gamma2),
        'g1': report.g1,
        'g2': report.g2,
        'rho': element_to_json(field, report.rho),
        'root_check': report.root_check,
        'roots_minimal': report.roots_minimal,
        'intersection_check': report.intersection_check,
        'intersection_failures': list(report.intersection_failures),
    }


def extraction_to_json(extraction):
    optional = lambda design: None if design is None else design_to_json(design)  # noqa: E731
    return {
        'holds': extraction.holds,
        'points': list(extraction.points),
        'ell': extraction.params.ell,
        'm_quad': extraction.params.m_quad,
        'g1': extraction.g1,
        'g2': extraction.g2,
        'blocks1': design_to_json(extraction.blocks1),
        'blocks2': design_to_json(extraction.blocks2),
        'lambda_checks': dict(extraction.lambda_checks),
        'split_sum': {'total': extraction.split_sum.total,
                      'expected': extraction.split_sum.expected,
                      'holds': extraction.split_sum.holds},
        'quasi_symmetric': extraction.quasi_symmetric,
        'predicted_intersections': None if extraction.predicted_intersections is None
        else list(extraction.predicted_intersections),
        'symmetric': extraction.symmetric,
        'merged': optional(extraction.merged),
        'merged_lambda_ok': extraction.merged_lambda_ok,
        'four_design': optional(extraction.four_design),
    }


def search_result_to_json(spec, result):
    field = spec.field
    return {
        'field': field_to_json(field),
        'form': matrix_to_json(field, spec.form),
        'a': element_to_json(field, spec.a),
        'b': element_to_json(field, spec.b),
        'n_target': spec.n_target,
        'mode': spec.mode.value,
        'dedup': spec.dedup.value,
        'etf_only': spec.etf_only,
        'count': result.count,
        'size': result.size,
        'systems': [frame_to_json(fs) for fs in result.systems],
        'stats': {
            'candidates': result.stats.candidates,
            'nodes_visited': result.stats.nodes_visited,
            'pruned': result.stats.pruned,
            'wall_time': round(result.stats.wall_time, 6),
        },
    }
