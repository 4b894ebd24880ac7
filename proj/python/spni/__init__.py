"""Shortest path network interdiction: decomposition refinement solver.

Thin Python surface over the C++ core. The main entry points:

    inst = spni.generate_grid(8, 8, seed=1)
    inst.budget = 2
    cfg = spni.RefineConfig()
    solution, trace = spni.solve_spni(inst, cfg)
    spni.calc_length(inst, solution)
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
