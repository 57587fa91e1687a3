"""
Module
------

    geometry.py

Description
-----------

    This module contains the geometry score: the mean relative living
    times (RLT) of one-dimensional homology over repeated witness
    complexes built on random landmark subsets of each point set, and
    the squared distance between the two mean-RLT histograms.

Classes
-------

    GeometryParams(n_landmarks, n_iterations, i_max, gamma, seed, min_samples)

        This is the base-class object for the geometry score
        parameters.

Functions
---------

    geometry_score(real, generated, params=None)

        This function returns the geometry score of two point sets.

    h1_intervals(dist, alpha_max)

        This function returns the one-dimensional persistence
        intervals of the witness filtration of a witness-to-landmark
        distance matrix.

    mean_rlt(points, params)

        This function returns the mean RLT histogram of a point set.

    relative_living_times(intervals, alpha_max, i_max)

        This function returns the RLT histogram of a set of intervals.

Notes
-----

    A simplex is alpha-witnessed by a point w if the largest distance
    from w to its vertices exceeds the distance from w to its nearest
    landmark by at most alpha; the filtration value of an edge or
    triangle is the smallest such alpha over all witnesses.

History
-------

    2026-10-18: Initial implementation.

"""

# ----

from dataclasses import asdict, dataclass
from typing import Dict, List, Tuple

import numpy
from scipy.spatial.distance import cdist

from behgan.config import parm_path, read_yaml, validate_config
from behgan.exceptions import MetricsError, TooFewSamples
from behgan.logger import Logger

# ----

# Define all available module properties.
__all__ = [
    "DEFAULT_GAMMA",
    "GeometryParams",
    "MIN_SAMPLES",
    "geometry_score",
    "h1_intervals",
    "load_geometry_params",
    "mean_rlt",
    "relative_living_times",
]

# ----

logger = Logger(caller_name=__name__)

MIN_SAMPLES = 100

# Fraction of the largest witness-to-landmark distance.
DEFAULT_GAMMA = 0.1

# Simplices evaluated per vectorized chunk.
TRIANGLE_CHUNK = 4096

# ----


@dataclass(frozen=True)
class GeometryParams:
    """
    Description
    -----------

    This is the base-class object for the geometry score parameters.

    Parameters
    ----------

    n_landmarks: ``int``

        The landmarks drawn per iteration.

    n_iterations: ``int``

        The number of witness complexes per set.

    i_max: ``int``

        The RLT histogram covers hole counts 0 to i_max - 1.

    gamma: ``float``

        The filtration upper bound as a fraction of the largest
        witness-to-landmark distance.

    seed: ``int``

        The landmark sampling seed; shared by both sets.

    min_samples: ``int``

        The fewest points accepted per set.

    """

    n_landmarks: int = 64
    n_iterations: int = 2500
    i_max: int = 100
    gamma: float = DEFAULT_GAMMA
    seed: int = 0
    min_samples: int = MIN_SAMPLES

    def __post_init__(self):
        if self.n_landmarks < 3 or self.n_iterations < 1 or self.i_max < 2:
            raise MetricsError(msg=f"Invalid geometry score parameters {asdict(self)}. Aborting!!!")
        if self.gamma is None or self.gamma <= 0.0:
            raise MetricsError(msg=f"The filtration fraction must be positive; received {self.gamma}. Aborting!!!")


@validate_config
def __geometry_config__(yaml_file: str = None) -> Tuple[str, Dict]:
    if yaml_file is None:
        yaml_file = str(parm_path("config.yaml"))

    return (parm_path("schema", "geometry.schema.yaml"), read_yaml(yaml_file=yaml_file).get("geometry"))


def load_geometry_params(yaml_file: str = None) -> GeometryParams:
    return GeometryParams(**__geometry_config__(yaml_file=yaml_file))


# ----


def _find(parent: List[int], idx: int) -> int:
    while parent[idx] != idx:
        parent[idx] = parent[parent[idx]]
        idx = parent[idx]
    return idx


def h1_intervals(dist: numpy.ndarray, alpha_max: float) -> List[Tuple[float, float]]:
    """
    Description
    -----------

    This function builds the witness filtration of edges and
    triangles up to `alpha_max` and returns the one-dimensional
    persistence intervals; intervals alive at `alpha_max` are closed
    there. Cycles are detected by union-find and killed by a Z/2
    column reduction of the triangle boundaries.

    Parameters
    ----------

    dist: ``numpy.ndarray``

        The (n_witnesses, n_landmarks) distance matrix.

    alpha_max: ``float``

        The filtration upper bound.

    Returns
    -------

    intervals: ``List[Tuple[float, float]]``

        The (birth, death) pairs of positive length.

    """

    n_landmarks = dist.shape[1]
    nearest = dist.min(axis=1)
    (ii, jj) = numpy.triu_indices(n_landmarks, k=1)
    edge_f = numpy.empty(ii.size)
    for start in range(0, ii.size, TRIANGLE_CHUNK):
        sl = slice(start, start + TRIANGLE_CHUNK)
        edge_f[sl] = (numpy.maximum(dist[:, ii[sl]], dist[:, jj[sl]]) - nearest[:, None]).min(axis=0)
    keep = edge_f <= alpha_max
    edges = sorted(zip(edge_f[keep].tolist(), ii[keep].tolist(), jj[keep].tolist()))
    if not edges:
        return []
    edge_index = {(i, j): k for k, (_, i, j) in enumerate(edges)}

    # Cycle-creating edges open an interval; the others merge components.
    parent = list(range(n_landmarks))
    births = {}
    for k, (value, i, j) in enumerate(edges):
        (ri, rj) = (_find(parent, i), _find(parent, j))
        if ri == rj:
            births[k] = value
        else:
            parent[ri] = rj

    # Candidate triangles have all three edges in the filtration.
    adjacency = [set() for _ in range(n_landmarks)]
    for _, i, j in edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    triangles = [
        (i, j, k)
        for i in range(n_landmarks)
        for j in sorted(adjacency[i])
        if j > i
        for k in sorted(adjacency[i] & adjacency[j])
        if k > j
    ]
    if not triangles:
        return [(b, alpha_max) for b in births.values() if alpha_max > b]
    tri = numpy.asarray(triangles)
    tri_f = numpy.empty(len(tri))
    for start in range(0, len(tri), TRIANGLE_CHUNK):
        sub = tri[start : start + TRIANGLE_CHUNK]
        worst = numpy.maximum(numpy.maximum(dist[:, sub[:, 0]], dist[:, sub[:, 1]]), dist[:, sub[:, 2]])
        tri_f[start : start + TRIANGLE_CHUNK] = (worst - nearest[:, None]).min(axis=0)

    intervals = []
    pivots: Dict[int, set] = {}
    for t in numpy.lexsort((numpy.arange(len(tri)), tri_f)):
        if tri_f[t] > alpha_max:
            break
        (i, j, k) = tri[t].tolist()
        column = {edge_index[(i, j)], edge_index[(i, k)], edge_index[(j, k)]}
        while column:
            low = max(column)
            if low not in pivots:
                break
            column ^= pivots[low]
        if not column:
            continue
        low = max(column)
        pivots[low] = column
        birth = births.pop(low, None)
        if birth is not None and tri_f[t] > birth:
            intervals.append((birth, float(tri_f[t])))
    intervals.extend((b, alpha_max) for b in births.values() if alpha_max > b)

    return intervals


def relative_living_times(intervals: List[Tuple[float, float]], alpha_max: float, i_max: int) -> numpy.ndarray:
    """
    Description
    -----------

    This function returns, for each hole count i < i_max, the fraction
    of [0, alpha_max] during which exactly i intervals are alive.

    """

    rlt = numpy.zeros(i_max)
    if alpha_max <= 0.0:
        rlt[0] = 1.0
        return rlt
    events = sorted([(b, 1) for b, _ in intervals] + [(d, -1) for _, d in intervals])
    (alive, last) = (0, 0.0)
    for position, delta in events:
        position = min(max(position, 0.0), alpha_max)
        if alive < i_max:
            rlt[alive] += position - last
        (alive, last) = (alive + delta, position)
    if alive < i_max:
        rlt[alive] += alpha_max - last

    return rlt / alpha_max


def mean_rlt(points: numpy.ndarray, params: GeometryParams) -> numpy.ndarray:
    """
    Description
    -----------

    This function returns the mean RLT histogram of a point set over
    `params.n_iterations` witness complexes whose landmarks are drawn
    from the stream `params.seed`; all points serve as witnesses.

    Raises
    ------

    TooFewSamples:

        - raised if the set has fewer than `params.min_samples`
          points.

    """

    points = numpy.asarray(points, dtype=numpy.float64).reshape(len(points), -1)
    n_points = len(points)
    if n_points < params.min_samples:
        msg = f"The geometry score requires at least {params.min_samples} samples; received {n_points}. Aborting!!!"
        raise TooFewSamples(msg=msg)
    full = cdist(points, points)
    n_landmarks = min(params.n_landmarks, n_points)
    rng = numpy.random.default_rng(params.seed)
    total = numpy.zeros(params.i_max)
    for _ in range(params.n_iterations):
        landmarks = rng.choice(n_points, size=n_landmarks, replace=False)
        dist = full[:, landmarks]
        alpha_max = params.gamma * float(dist.max())
        total += relative_living_times(
            intervals=h1_intervals(dist=dist, alpha_max=alpha_max), alpha_max=alpha_max, i_max=params.i_max
        )

    return total / params.n_iterations


def geometry_score(real: numpy.ndarray, generated: numpy.ndarray, params: GeometryParams = None) -> float:
    """
    Description
    -----------

    This function returns the sum of squared differences of the mean
    RLT histograms of two point sets (images are flattened); both
    sets are sampled with the same landmark stream.

    Parameters
    ----------

    real: ``numpy.ndarray``

        The real points, one per row (or per leading index).

    generated: ``numpy.ndarray``

        The generated points.

    Keywords
    --------

    params: ``GeometryParams``, optional

        A Python GeometryParams object; the defaults if NoneType.

    Returns
    -------

    score: ``float``

        The geometry score; lower is closer.

    """

    params = params or GeometryParams()
    (rlt_real, rlt_gen) = (mean_rlt(points=real, params=params), mean_rlt(points=generated, params=params))

    return float(((rlt_real - rlt_gen) ** 2).sum())
