from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from sspt.exceptions import ErrorCode, ParameterError

MAX_SUBDIVISION_LEVEL = 7

_GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0

_ICOSAHEDRON_VERTICES = np.array(
    [
        [-1.0, _GOLDEN_RATIO, 0.0],
        [1.0, _GOLDEN_RATIO, 0.0],
        [-1.0, -_GOLDEN_RATIO, 0.0],
        [1.0, -_GOLDEN_RATIO, 0.0],
        [0.0, -1.0, _GOLDEN_RATIO],
        [0.0, 1.0, _GOLDEN_RATIO],
        [0.0, -1.0, -_GOLDEN_RATIO],
        [0.0, 1.0, -_GOLDEN_RATIO],
        [_GOLDEN_RATIO, 0.0, -1.0],
        [_GOLDEN_RATIO, 0.0, 1.0],
        [-_GOLDEN_RATIO, 0.0, -1.0],
        [-_GOLDEN_RATIO, 0.0, 1.0],
    ]
)

_ICOSAHEDRON_FACES = np.array(
    [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [5, 4, 9],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ],
    dtype=np.int64,
)


def expected_vertex_count(level: int) -> int:
    return 10 * 4**level + 2


@dataclass(frozen=True, eq=False)
class DiscretizedSphere:
    """Unit sphere tessellated by a subdivided icosahedron

    Arrays are read-only, so one instance is shared by all tracking
    threads.
    """

    vertices: np.ndarray
    faces: np.ndarray
    subdivision_level: int
    adjacency: Tuple[np.ndarray, ...] = field(repr=False)
    vertex_weights: np.ndarray = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]

    @property
    def max_edge_angle(self) -> float:
        """Largest angle in radians between two adjacent vertices"""
        edges = _unique_edges(self.faces)
        cosines = np.einsum(
            "ij,ij->i", self.vertices[edges[:, 0]], self.vertices[edges[:, 1]]
        )
        return float(np.arccos(np.clip(cosines.min(), -1.0, 1.0)))

    def nearest_vertex(self, directions: np.ndarray) -> np.ndarray:
        """Index of the vertex with the largest dot product

        Accepts one direction of shape ``(3,)`` (returns a scalar index)
        or a batch of shape ``(N, 3)``.
        """
        directions = np.asarray(directions, dtype=np.float64)
        return np.argmax(directions @ self.vertices.T, axis=-1)


def subdivide_icosahedron(level: int) -> DiscretizedSphere:
    if not isinstance(level, (int, np.integer)) or not (
        0 <= level <= MAX_SUBDIVISION_LEVEL
    ):
        raise ParameterError(
            f"Subdivision level must be in [0, {MAX_SUBDIVISION_LEVEL}]",
            detail=f"Got {level!r}",
            code=ErrorCode.LevelOutOfRange,
        )
    return _cached_sphere(int(level))


def nearest_vertex(
    sphere: DiscretizedSphere,
    direction: np.ndarray,
    start: Optional[int] = None,
) -> int:
    """Nearest vertex of one direction

    Given a ``start`` vertex, climbs along neighboring vertices while the
    dot product grows instead of scanning the whole sphere.
    """
    if start is None:
        return int(sphere.nearest_vertex(direction))

    direction = np.asarray(direction, dtype=np.float64)
    current = int(start)
    best = float(sphere.vertices[current] @ direction)
    while True:
        neighbors = sphere.adjacency[current]
        scores = sphere.vertices[neighbors] @ direction
        step = int(np.argmax(scores))
        if scores[step] <= best:
            return current
        current, best = int(neighbors[step]), float(scores[step])


@lru_cache(maxsize=None)
def _cached_sphere(level: int) -> DiscretizedSphere:
    vertices = _ICOSAHEDRON_VERTICES / np.linalg.norm(
        _ICOSAHEDRON_VERTICES, axis=1, keepdims=True
    )
    faces = _ICOSAHEDRON_FACES.copy()

    for _ in range(level):
        vertices, faces = _subdivide(vertices, faces)

    adjacency = _adjacency(vertices.shape[0], faces)
    weights = _vertex_weights(vertices, faces)

    for array in (vertices, faces, weights, *adjacency):
        array.setflags(write=False)

    return DiscretizedSphere(
        vertices=vertices,
        faces=faces,
        subdivision_level=level,
        adjacency=adjacency,
        vertex_weights=weights,
    )


def _unique_edges(faces: np.ndarray) -> np.ndarray:
    edges = faces[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 2)
    return np.unique(np.sort(edges, axis=1), axis=0)


def _subdivide(
    vertices: np.ndarray, faces: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Split every triangle in four, new vertices pushed to the sphere"""
    edges = np.sort(faces[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 3, 2), axis=2)
    unique_edges, inverse = np.unique(
        edges.reshape(-1, 2), axis=0, return_inverse=True
    )
    inverse = inverse.reshape(-1, 3)

    midpoints = vertices[unique_edges[:, 0]] + vertices[unique_edges[:, 1]]
    midpoints /= np.linalg.norm(midpoints, axis=1, keepdims=True)

    first_new = vertices.shape[0]
    a, b, c = faces[:, 0], faces[:, 1], faces[:, 2]
    ab = first_new + inverse[:, 0]
    bc = first_new + inverse[:, 1]
    ca = first_new + inverse[:, 2]

    new_faces = np.concatenate(
        [
            np.stack([a, ab, ca], axis=1),
            np.stack([ab, b, bc], axis=1),
            np.stack([ca, bc, c], axis=1),
            np.stack([ab, bc, ca], axis=1),
        ]
    )
    return np.vstack([vertices, midpoints]), new_faces


def _adjacency(vertex_count: int, faces: np.ndarray) -> Tuple[np.ndarray, ...]:
    edges = _unique_edges(faces)
    both_ways = np.vstack([edges, edges[:, ::-1]])
    order = np.lexsort((both_ways[:, 1], both_ways[:, 0]))
    both_ways = both_ways[order]
    splits = np.searchsorted(both_ways[:, 0], np.arange(1, vertex_count))
    return tuple(np.split(both_ways[:, 1], splits))


def _vertex_weights(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """Solid angle per vertex, a third of every incident triangle"""
    a = vertices[faces[:, 0]]
    b = vertices[faces[:, 1]]
    c = vertices[faces[:, 2]]
    triple = np.abs(np.einsum("ij,ij->i", a, np.cross(b, c)))
    denominator = (
        1.0
        + np.einsum("ij,ij->i", a, b)
        + np.einsum("ij,ij->i", b, c)
        + np.einsum("ij,ij->i", c, a)
    )
    areas = 2.0 * np.arctan2(triple, denominator)

    weights = np.zeros(vertices.shape[0])
    for corner in range(3):
        np.add.at(weights, faces[:, corner], areas / 3.0)
    return weights
