"""Equilibrium counting for product two-action games.

Exact combinatorial classification, a numerical support-enumeration solver,
and seeded deformation / inequality-scan experiments.
"""

import json

from ._core import (
    GameFormatError,
    ProductGame,
    delta_permutation,
    face_equilibrium_bound,
    lower_bound,
    subfactorial,
    vidunas_bound,
)
from . import _core

__all__ = [
    "GameFormatError",
    "ProductGame",
    "candidates",
    "census",
    "deform",
    "delta_permutation",
    "face_equilibrium_bound",
    "lower_bound",
    "maximal_game",
    "random_game",
    "scan",
    "solve",
    "subfactorial",
    "table",
    "vidunas_bound",
]


def maximal_game(m):
    return ProductGame.maximal(m)


def table(m_max):
    """Rows (m, !m, V(m), (V(m)+!m)/2) for m = 1..m_max."""
    return [(m, subfactorial(m), vidunas_bound(m), lower_bound(m)) for m in range(1, m_max + 1)]


def census(game, method="both", threads=1):
    return json.loads(_core._census(game, method, threads))


def candidates(game):
    return json.loads(_core._candidates(game))


def solve(game, starts=0, residual_tol=1e-10, dedup_tol=1e-6, seed=0, threads=1):
    """Numerical solve of a ProductGame or a game-file JSON string."""
    text = game.to_json() if isinstance(game, ProductGame) else game
    return json.loads(_core._solve(text, starts, residual_tol, dedup_tol, seed, threads))


def deform(game, epsilon=1e-3, trials=100, seed=0, threads=1):
    return json.loads(_core._deform(game, epsilon, trials, seed, threads))


def scan(m=3, trials=1000, seed=0, threads=1):
    return json.loads(_core._scan(m, trials, seed, threads))


def random_game(m, seed):
    """Game-file JSON text for a random float game with utilities in [-1, 1]."""
    return _core._random_game(m, seed)
