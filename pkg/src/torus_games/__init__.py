"""Simulation and numerical limits for evolutionary games on the torus
under weak selection: validated step kernels, coalescing-walk Monte
Carlo, game-matrix reaction terms, an exact event-driven particle
simulator, ODE/PDE limit integrators and an experiment harness."""

__version__ = "0.1.0"
