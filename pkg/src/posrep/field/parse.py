"""Parse arithmetic expressions such as ``sqrt(1 - eps^2) + 3/2*eps^(1/2)``."""

from __future__ import annotations

import ast
from fractions import Fraction

from .puiseux import EPS, FieldElem, coerce

_EPS_NAMES = {"eps", "ε", "epsilon", "X"}


class ParseError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def parse_field(text: str) -> FieldElem:
    src = text.strip().replace("^", "**").replace("ε", "eps").replace("√", "sqrt")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc
    return coerce(_eval(tree.body))


def _const(node) -> Fraction:
    val = _eval(node)
    if isinstance(val, FieldElem):
        return val.as_fraction()
    return Fraction(val)


def _eval(node):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ParseError(f"unsupported literal {node.value!r}")
        # repr keeps the decimal digits the user typed
        return Fraction(repr(node.value)) if isinstance(node.value, float) else Fraction(node.value)
    if isinstance(node, ast.Name):
        if node.id in _EPS_NAMES:
            return EPS
        raise ParseError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        val = _eval(node.operand)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ParseError("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _power(node.left, node.right)
        left, right = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(left, Fraction) and isinstance(right, Fraction):
                if right == 0:
                    raise ParseError("division by zero")
                return left / right
            return coerce(left) / coerce(right)
        raise ParseError("unsupported binary operator")
    if isinstance(node, ast.Call):
        if isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1:
            return coerce(_eval(node.args[0])).sqrt()
        if isinstance(node.func, ast.Name) and node.func.id == "O" and len(node.args) == 1:
            inner = coerce(_eval(node.args[0]))
            if len(inner.terms) != 1 or not inner.is_exact:
                raise ParseError("O(...) takes a single power of eps")
            return FieldElem.big_o(inner.terms[0][0])
        raise ParseError("only sqrt(...) and O(...) calls are supported")
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _power(base_node, exp_node):
    exp = _const(exp_node)
    if isinstance(base_node, ast.Name) and base_node.id in _EPS_NAMES:
        return FieldElem.eps(exp)
    base = _eval(base_node)
    if exp.denominator == 1:
        if isinstance(base, Fraction):
            if base == 0 and exp < 0:
                raise ParseError("division by zero")
            return base ** exp.numerator
        return base ** exp.numerator
    if exp.denominator == 2:
        root = coerce(base).sqrt()
        return root ** exp.numerator
    raise ParseError("only integer and half-integer powers are supported")
