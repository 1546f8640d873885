"""
稀疏多元多项式组的编译求值核（numba）

系统被展平为三组数组：
  coeffs[t]  第 t 项的复系数
  exps[t, j] 第 t 项中第 j 个变量的指数
  owners[t]  第 t 项所属方程
"""

import numpy as np
from numba import njit

@njit(cache=True)
def ipow(z, e):
    """整数次幂（重复平方），0^0 = 1"""
    result = 1.0 + 0.0j
    base = z
    while e > 0:
        if e & 1:
            result *= base
        base *= base
        e >>= 1
    return result

@njit(cache=True)
def eval_terms(coeffs, exps, owners, n_eq, y):
    out = np.zeros(n_eq, dtype=np.complex128)
    n_terms, n_vars = exps.shape
    for t in range(n_terms):
        m = coeffs[t]
        for j in range(n_vars):
            e = exps[t, j]
            if e > 0:
                m *= ipow(y[j], e)
        out[owners[t]] += m
    return out

@njit(cache=True)
def eval_jac_terms(coeffs, exps, owners, n_eq, y):
    """同时返回函数值与 Jacobian"""
    n_terms, n_vars = exps.shape
    out = np.zeros(n_eq, dtype=np.complex128)
    jac = np.zeros((n_eq, n_vars), dtype=np.complex128)
    for t in range(n_terms):
        row = owners[t]
        m = coeffs[t]
        for j in range(n_vars):
            e = exps[t, j]
            if e > 0:
                m *= ipow(y[j], e)
        out[row] += m
        for j in range(n_vars):
            e = exps[t, j]
            if e == 0:
                continue
            d = coeffs[t] * e * ipow(y[j], e - 1)
            for k in range(n_vars):
                if k != j and exps[t, k] > 0:
                    d *= ipow(y[k], exps[t, k])
            jac[row, j] += d
    return out, jac

