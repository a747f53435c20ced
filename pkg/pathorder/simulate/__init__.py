""" Coupled interacting particle Euler-Maruyama simulation with shared Brownian increments. """

from .cloud import ParticleCloud, init_cloud
from .euler import euler_step, run, simulate_pair
from .noise import NoisePlan

__all__ = ("ParticleCloud",
           "NoisePlan",
           "init_cloud",
           "euler_step",
           "simulate_pair",
           "run")
