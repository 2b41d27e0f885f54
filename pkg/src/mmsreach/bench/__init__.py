"""Benchmark arenas, the RRT baseline, the comparison harness and the SVG renderer."""

from .arenas import FAMILIES, ArenaError, ArenaParams, axis_modes, gen_arena
from .harness import BenchCase, BenchConfig, BenchReport, BenchRow, run_benchmarks
from .rrt import RrtParams, RrtResult, path_plan, rrt_plan, rrt_search
from .svg import render_svg

__all__ = [
    "FAMILIES",
    "ArenaError",
    "ArenaParams",
    "axis_modes",
    "gen_arena",
    "BenchCase",
    "BenchConfig",
    "BenchReport",
    "BenchRow",
    "run_benchmarks",
    "RrtParams",
    "RrtResult",
    "path_plan",
    "rrt_plan",
    "rrt_search",
    "render_svg",
]
