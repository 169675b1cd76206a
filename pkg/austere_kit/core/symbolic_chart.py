"""
Charts given as sympy expressions, with exact derivatives
"""

import logging
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sym
from sympy.parsing.sympy_parser import parse_expr

logger = logging.getLogger(__name__)

Component = Union[str, sym.Expr, int, float, complex]


def parameter_symbols(k: int) -> Tuple[sym.Symbol, ...]:
    """Real parameter symbols u1, ..., uk"""
    return tuple(sym.symbols(f"u1:{k + 1}", real=True))


def parse_component(text: Component, symbols: Sequence[sym.Symbol], constants: Optional[Dict[str, float]] = None) -> sym.Expr:
    if isinstance(text, sym.Expr):
        return text
    if not isinstance(text, str):
        return sym.sympify(text)
    local = {s.name: s for s in symbols}
    local["I"] = sym.I
    local.update({name: sym.Float(value) for name, value in (constants or {}).items()})
    return parse_expr(text, local_dict=local)


class SymbolicChart:
    """Lift chart R^k -> C^(n+1) built from component expressions

    When ``normalize`` is set the components are divided by their hermitian norm, so the
    chart lands on the unit sphere for any nonvanishing homogeneous expression. Values and
    exact first and second partial derivatives are compiled with ``sympy.lambdify``.
    """

    def __init__(self, components: Sequence[Component], k: int, normalize: bool = True,
                 constants: Optional[Dict[str, float]] = None):
        self.k = k
        self.symbols = parameter_symbols(k)
        raw = [parse_component(c, self.symbols, constants) for c in components]
        unknown = set().union(*(e.free_symbols for e in raw)) - set(self.symbols)
        if unknown:
            raise ValueError(f"Chart uses unknown symbols: {sorted(str(s) for s in unknown)}")
        self.raw = raw
        self.normalize = normalize
        if normalize:
            norm2 = sym.Add(*[re ** 2 + im ** 2 for re, im in (e.as_real_imag() for e in raw)])
            components = [e / sym.sqrt(norm2) for e in raw]
        else:
            components = raw
        self.expressions = sym.Matrix(components)
        self.n = len(components) - 1

        first = [self.expressions.diff(s) for s in self.symbols]
        second = [[first[i].diff(self.symbols[j]) for j in range(k)] for i in range(k)]
        self._value = sym.lambdify(self.symbols, self.expressions, "numpy")
        self._first = [sym.lambdify(self.symbols, d, "numpy") for d in first]
        self._second = [[sym.lambdify(self.symbols, d, "numpy") for d in row] for row in second]
        logger.debug(f"Compiled symbolic chart k={k} n={self.n} normalize={normalize}")

    def _eval(self, func, u: np.ndarray) -> np.ndarray:
        return np.asarray(func(*np.asarray(u, dtype=float)), dtype=complex).reshape(-1)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return self._eval(self._value, u)

    def exact_jet(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Chart value with exact first and second partials"""
        value = self(u)
        first = np.array([self._eval(f, u) for f in self._first])
        second = np.array([[self._eval(f, u) for f in row] for row in self._second])
        return value, first, second

    def is_polynomial(self) -> bool:
        return all(e.is_polynomial(*self.symbols) for e in self.raw)


__all__ = ["SymbolicChart", "parameter_symbols", "parse_component"]
