"""
整系数多项式工具：模 p 不可约证书、有理根与低次显式解数据
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_irred_p_rabin

import config
from utils.poly_core import MonicPoly, RootOptions, find_roots
from utils.systems import ClassTag, build_full, residual
from utils.tools import canonical_key, relative_distance

logger = logging.getLogger(__name__)

W = sympy.Symbol('w')

# 已知解在完整方程组上的残差上界
KNOWN_ANSWER_RESIDUAL = 1e-9

class BadPrime(ValueError):
    """p 整除首项系数"""

class MismatchReport(AssertionError):
    """已知解与普查结果不一致"""

    def __init__(self, message: str, unmatched: Sequence[dict] = ()):
        super().__init__(message)
        self.unmatched = list(unmatched)

@dataclass(frozen=True)
class IntPoly:
    """整系数一元多项式，系数从常数项开始"""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        values = [int(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        if not values:
            raise ValueError("IntPoly requires a nonzero polynomial")
        object.__setattr__(self, 'coeffs', tuple(values))

    @classmethod
    def parse(cls, text: str) -> 'IntPoly':
        """由 w 的表达式解析，例如 '2*w**3 + 2*w**2 - 1'"""
        poly = sympy.Poly(sympy.sympify(text, locals={'w': W}), W)
        if not all(c.is_integer for c in poly.all_coeffs()):
            raise ValueError(f"{text} does not have integer coefficients")
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def descending(self) -> List[int]:
        return list(reversed(self.coeffs))

    def __call__(self, x: Fraction) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(self.descending(), W, domain='QQ')

    def __str__(self) -> str:
        return str(sympy.Poly(self.descending(), W).as_expr())

@dataclass(frozen=True)
class Certificate:
    """模 prime 不可约，从而在有理数域上不可约"""
    prime: int

@dataclass(frozen=True)
class Inconclusive:
    reason: str
    prime_bound: int = 0

def irreducible_mod_p(f: IntPoly, p: int) -> bool:
    """
    F_p 上的 Rabin 不可约性检验

    Raises:
        BadPrime: p 整除首项系数（约化后次数下降）
    """
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if f.leading % p == 0:
        raise BadPrime(f"p={p} divides the leading coefficient of {f}")
    return bool(gf_irred_p_rabin(gf_from_int_poly(f.descending(), p), p, ZZ))

def rational_roots(f: IntPoly) -> List[Fraction]:
    """有理根定理：候选为 ±(常数项因子)/(首项因子)"""
    coeffs = list(f.coeffs)
    roots = set()
    # 先去掉 w 的因子
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) <= 1:
        return sorted(roots)
    reduced = IntPoly(tuple(coeffs))
    for num in sympy.divisors(abs(coeffs[0])):
        for den in sympy.divisors(abs(coeffs[-1])):
            for candidate in (Fraction(num, den), Fraction(-num, den)):
                if reduced(candidate) == 0:
                    roots.add(candidate)
    return sorted(roots)

def certify_irreducible(f: IntPoly, prime_bound: Optional[int] = None) -> Union[Certificate, Inconclusive]:
    """
    扫描 p ≤ prime_bound，返回最小的使 f 模 p 不可约的素数

    从不断言可约：有有理根时返回 Inconclusive('rational_root')，
    找不到素数时返回 Inconclusive('no_prime')。
    """
    prime_bound = config.PRIME_BOUND if prime_bound is None else prime_bound
    if f.degree < 1:
        raise ValueError("certify_irreducible requires degree >= 1")
    if rational_roots(f):
        return Inconclusive("rational_root", prime_bound)
    for p in sympy.primerange(2, prime_bound + 1):
        try:
            if irreducible_mod_p(f, p):
                logger.debug(f"✅ {f} 模 {p} 不可约")
                return Certificate(int(p))
        except BadPrime:
            continue
    return Inconclusive("no_prime", prime_bound)

def to_monic(f: IntPoly) -> MonicPoly:
    """除以首项系数，得到 y_1..y_N"""
    lead = f.leading
    return MonicPoly(tuple(c / lead for c in reversed(f.coeffs[:-1])))

# ---------------------------------------------------------------- 已知解

@dataclass(frozen=True)
class KnownAnswer:
    degree_n: int
    class_tag: ClassTag
    defining_poly: IntPoly
    formulas: Tuple[str, ...]
    expected_count: int
    note: str = field(default="", compare=False)

    @property
    def symbols(self) -> List[sympy.Symbol]:
        return [sympy.Symbol(f"y{k}") for k in range(1, self.degree_n + 1)]

    def expressions(self) -> List[sympy.Expr]:
        """系数公式，可引用 w 与之前的 y_k"""
        names = {'w': W}
        names.update({str(s): s for s in self.symbols})
        return [sympy.sympify(text, locals=names) for text in self.formulas]

def load_known_answers(path: Optional[str] = None) -> List[KnownAnswer]:
    """读取版本化的已知解数据文件"""
    path = path or config.KNOWN_ANSWERS_FILE
    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    if data.get('version') != 1:
        raise ValueError(f"unsupported known-answer data version {data.get('version')}")
    answers = []
    for item in data['answers']:
        if len(item['formulas']) != item['degree']:
            raise ValueError(f"N={item['degree']} {item['class']}: expected {item['degree']} formulas")
        answers.append(KnownAnswer(
            degree_n=int(item['degree']),
            class_tag=ClassTag(item['class']),
            defining_poly=IntPoly(tuple(item['defining_poly'])),
            formulas=tuple(item['formulas']),
            expected_count=int(item['expected_count']),
            note=item.get('note', ""),
        ))
    return answers

def _defining_roots(f: IntPoly, precision: str, dps: int) -> List:
    if precision == "extended":
        with mpmath.workdps(dps):
            return list(mpmath.polyroots(f.descending(), maxsteps=200, extraprec=2 * dps))
    if f.degree == 0:
        return []
    roots = find_roots(to_monic(f), RootOptions(residual_tol=1e-12))
    return list(roots.elements)

def known_answer_points(ka: KnownAnswer, precision: str = "double", dps: int = 34) -> List[np.ndarray]:
    """
    对定义多项式的每个复根 w 依次代入系数公式

    double 用 Aberth 求根，extended 用 mpmath.polyroots 在 dps 位下求根并求值。
    """
    expressions = ka.expressions()
    symbols = ka.symbols
    functions = [sympy.lambdify([W] + symbols[:k], expr, modules='mpmath')
                 for k, expr in enumerate(expressions)]
    points = []
    with mpmath.workdps(dps if precision == "extended" else 17):
        for w in _defining_roots(ka.defining_poly, precision, dps):
            values = []
            for fn in functions:
                values.append(mpmath.mpc(fn(mpmath.mpc(w), *values)))
            points.append(np.array([complex(v) for v in values], dtype=np.complex128))
    return sorted(points, key=canonical_key)

def exact_remainders(ka: KnownAnswer) -> List[sympy.Poly]:
    """把公式代入完整方程组并对定义多项式取余；转录正确时全部为零"""
    f = ka.defining_poly.to_sympy()
    expressions = ka.expressions()
    values: List[sympy.Poly] = []
    for k, expr in enumerate(expressions):
        substituted = expr.subs({s: v.as_expr() for s, v in zip(ka.symbols[:k], values)})
        values.append(sympy.Poly(substituted, W, domain='QQ').rem(f))

    one = sympy.Poly(1, W, domain='QQ')
    remainders = []
    for eq in build_full(ka.degree_n).equations:
        total = one * 0
        for exps, coef in eq.terms:
            term = one * sympy.Rational(coef.numerator, coef.denominator)
            for value, e in zip(values, exps):
                for _ in range(e):
                    term = (term * value).rem(f)
            total = total + term
        remainders.append(total.rem(f))
    return remainders

def verify_known_answers(degree_n: int, report, answers: Optional[List[KnownAnswer]] = None,
                         precision: str = "double", residual_tol: float = KNOWN_ANSWER_RESIDUAL) -> List[dict]:
    """
    对照已知解检查普查结果

    每个已知点须满足完整方程组残差 < residual_tol，且在 dedup_tol 内恰好匹配
    报告中一个解，且该解的类别相同；点数须等于 expected_count。

    Raises:
        MismatchReport: 任一检查失败，附未匹配的点
    """
    if degree_n not in (2, 3, 4):
        raise ValueError("known answers exist for N in {2, 3, 4}")
    answers = load_known_answers() if answers is None else answers
    full = build_full(degree_n)
    tol = report.tolerances.get('dedup', config.DEDUP_TOL)
    solutions = report.solutions

    audit, unmatched = [], []
    for ka in (a for a in answers if a.degree_n == degree_n):
        points = known_answer_points(ka, precision)
        worst = 0.0
        matched = 0
        for point in points:
            res = residual(full, point)
            worst = max(worst, res)
            hits = [s for s in solutions if relative_distance(s.y, point) <= tol]
            entry = {'class': ka.class_tag.value, 'y': [complex(v) for v in point], 'residual': res}
            if res >= residual_tol or len(hits) != 1 or hits[0].class_tag is not ka.class_tag:
                entry['matches'] = len(hits)
                unmatched.append(entry)
            else:
                matched += 1
        audit.append({
            'class': ka.class_tag.value,
            'defining_poly': str(ka.defining_poly),
            'expected': ka.expected_count,
            'found': len(points),
            'matched': matched,
            'max_residual': worst,
        })
        if len(points) != ka.expected_count:
            unmatched.append({'class': ka.class_tag.value, 'count': len(points), 'expected': ka.expected_count})

    if unmatched:
        raise MismatchReport(f"N={degree_n}: {len(unmatched)} known-answer checks failed", unmatched)
    logger.info(f"✅ N={degree_n} 已知解全部匹配")
    return audit
