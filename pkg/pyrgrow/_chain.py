"""Incremental construction of verified growth chains."""

from collections.abc import Iterable
from typing import Optional

from pyrgrow._exceptions import ConstructionError, InvalidStep, LiftFailed
from pyrgrow._types import Point
from pyrgrow._util import point_str
from pyrgrow.extension import GrowthChain, PyramidalStep, make_step
from pyrgrow.kernel import Polytope, conv_hull


class ChainBuilder:
    """Collects pyramidal steps, checking each one as it is added.

    A step that is not pyramidal raises *error* (a
    :exc:`ConstructionError` subclass).
    """

    __slots__ = 'initial', 'current', 'steps', 'polytopes', 'error'

    def __init__(
        self,
        initial: Polytope,
        error: type[ConstructionError] = LiftFailed,
    ):
        self.initial = initial
        self.current = initial
        self.steps: list[PyramidalStep] = []
        self.polytopes: list[Polytope] = [initial]
        self.error = error

    def __len__(self) -> int:
        return len(self.steps)

    def add(self, apex: Point, skip_inside: bool = False) -> Optional[PyramidalStep]:
        if skip_inside and self.current.contains_point(apex):
            return None
        try:
            step = make_step(self.current, apex)
        except InvalidStep as exc:
            raise self.error(f'adding {point_str(apex)} is not pyramidal') from exc
        self.current = conv_hull(self.current.vertices + (step.apex,))
        self.steps.append(step)
        self.polytopes.append(self.current)
        return step

    def add_all(self, apexes: Iterable[Point], skip_inside: bool = False) -> None:
        for apex in apexes:
            self.add(apex, skip_inside=skip_inside)

    def extend(self, chain: GrowthChain) -> None:
        """Append the steps of *chain*, which must start at the current polytope."""
        if chain.initial != self.current:
            raise self.error('the chain does not start at the current polytope')
        self.add_all(chain.apexes)

    def expect(self, target: Polytope, what: str = 'construction') -> None:
        if self.current != target:
            raise self.error(f'{what} did not reach its target polytope')

    def chain(self) -> GrowthChain:
        chain = GrowthChain(self.initial, self.steps)
        chain._polytopes = tuple(self.polytopes)
        return chain
