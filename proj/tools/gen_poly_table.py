#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates src/gf_poly_table.inc.

For every prime power p^m <= 2^16 with m >= 2 this emits the primitive
polynomial whose lower coefficients, read as a base-p integer (constant
term least significant), are smallest. Output is deterministic.
"""
import sys

LIMIT = 1 << 16


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def prime_factors(n):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def mulmod(a, b, f, p):
    m = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, m - 1, -1):
        c = prod[deg]
        if c:
            for t in range(m + 1):
                prod[deg - m + t] = (prod[deg - m + t] - c * f[t]) % p
    return (prod + [0] * m)[:m]


def x_pow(e, f, p):
    m = len(f) - 1
    result = [1] + [0] * (m - 1)
    base = ([0, 1] + [0] * m)[:m]
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive(f, p):
    m = len(f) - 1
    if f[0] == 0:
        return False
    order = p ** m - 1
    one = [1] + [0] * (m - 1)
    if x_pow(order, f, p) != one:
        return False
    return all(x_pow(order // l, f, p) != one for l in prime_factors(order))


def smallest_primitive(p, m):
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        f = low + [1]
        if is_primitive(f, p):
            return f
    raise RuntimeError(f"no primitive polynomial for ({p},{m})")


def main():
    rows = []
    for p in primes_upto(LIMIT):
        m = 2
        while p ** m <= LIMIT:
            rows.append((p, m, smallest_primitive(p, m)))
            m += 1
    out = sys.stdout
    out.write("// SPDX-License-Identifier: Apache-2.0\n")
    out.write("// Generated by tools/gen_poly_table.py. Do not edit.\n")
    out.write("// {p, m, {c_0, c_1, ..., c_m}} with c_m = 1.\n")
    for p, m, f in rows:
        out.write("{%d, %d, {%s}},\n" % (p, m, ", ".join(map(str, f))))


if __name__ == "__main__":
    main()
