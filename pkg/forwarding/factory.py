"""
Strategy factory for registering and creating forwarding strategies.
"""

from typing import Any, Type

from forwarding.base import ForwardingStrategy


class StrategyFactory:
    """Registry of forwarding strategies by protocol name."""

    _strategies: dict[str, Type[ForwardingStrategy]] = {}

    @classmethod
    def register(cls, strategy_class: Type[ForwardingStrategy]) -> None:
        """Register a strategy class."""
        instance = strategy_class()
        cls._strategies[instance.name] = strategy_class

    @classmethod
    def create(cls, name: str, **kwargs: Any) -> ForwardingStrategy:
        """
        Create a strategy instance by protocol name.

        Raises:
            KeyError: If the protocol is not registered
        """
        if name not in cls._strategies:
            raise KeyError(f"Unknown protocol: {name}")
        return cls._strategies[name](**kwargs)

    @classmethod
    def names(cls) -> list[str]:
        return sorted(cls._strategies)

    @classmethod
    def get_all(cls) -> dict[str, ForwardingStrategy]:
        """Get a default instance of every registered strategy."""
        return {name: strategy_class() for name, strategy_class in cls._strategies.items()}


def register_builtin_strategies() -> None:
    """Register built-in strategies with lazy imports to avoid circular imports."""
    from forwarding.strategies.aal2r import Aal2rStrategy
    from forwarding.strategies.gsr import GsrStrategy

    StrategyFactory.register(GsrStrategy)
    StrategyFactory.register(Aal2rStrategy)
