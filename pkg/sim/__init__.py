"""
Simulation core: event engine and random streams.
"""

from sim.engine import Event, Simulator
from sim.streams import RandomStream

__all__ = ['Event', 'Simulator', 'RandomStream']
