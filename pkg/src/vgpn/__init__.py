"""Voice-guided pointing navigation in simulation.

Submodules: language (command understanding), geometry (pointing rays),
world (scenes and target resolution), nav (planning and execution), pipeline
(end-to-end orchestration), harness (experiment reproduction), service
(session HTTP API), kernels (numba-accelerated numerics).
"""

__version__ = "0.1.0"
