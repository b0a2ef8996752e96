#!/usr/bin/env python3
# Copyright 2026 The pgc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the small OpenQASM 2.0 benchmark corpus used by the tests and bench.

Circuits follow the usual textbook constructions at N <= 10. Output is fully
deterministic so the files can be regenerated and diffed.
"""

import argparse
import math
import pathlib
import random

LICENSE = '// Copyright 2026 The pgc Authors\n//\n// Licensed under the Apache License, Version 2.0 (the "License");\n// you may not use this file except in compliance with the License.\n// You may obtain a copy of the License at\n//\n//      http://www.apache.org/licenses/LICENSE-2.0\n//\n// Unless required by applicable law or agreed to in writing, software\n// distributed under the License is distributed on an "AS IS" BASIS,\n// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n// See the License for the specific language governing permissions and\n// limitations under the License.\n'
HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def fmt(x):
    return repr(round(x, 12))


class Qasm:
    def __init__(self, n, comment):
        self.n = n
        self.lines = [LICENSE + f"// {comment}", HEADER.rstrip("\n"), f"qreg q[{n}];", f"creg c[{n}];"]

    def op(self, text):
        self.lines.append(text + ";")

    def measure_all(self):
        for i in range(self.n):
            self.op(f"measure q[{i}] -> c[{i}]")

    def text(self):
        return "\n".join(self.lines) + "\n"


def qaoa(n, edges, gammas, betas, comment):
    q = Qasm(n, comment)
    for i in range(n):
        q.op(f"h q[{i}]")
    for g, b in zip(gammas, betas):
        for a, c in edges:
            q.op(f"cx q[{a}],q[{c}]")
            q.op(f"rz({fmt(2 * g)}) q[{c}]")
            q.op(f"cx q[{a}],q[{c}]")
        for i in range(n):
            q.op(f"rx({fmt(2 * b)}) q[{i}]")
    q.measure_all()
    return q


def qft(n):
    q = Qasm(n, f"quantum Fourier transform on {n} qubits, input |1010...>")
    for i in range(0, n, 2):
        q.op(f"x q[{i}]")
    for i in range(n):
        q.op(f"h q[{i}]")
        for j in range(i + 1, n):
            q.op(f"cu1(pi/{2 ** (j - i)}) q[{j}],q[{i}]")
    for i in range(n // 2):
        q.op(f"swap q[{i}],q[{n - 1 - i}]")
    q.measure_all()
    return q


def ising(n, steps, j, h, dt):
    q = Qasm(n, f"transverse-field Ising chain, {steps} Trotter steps")
    for i in range(n):
        q.op(f"h q[{i}]")
    for _ in range(steps):
        for i in range(n - 1):
            q.op(f"cx q[{i}],q[{i + 1}]")
            q.op(f"rz({fmt(2 * j * dt)}) q[{i + 1}]")
            q.op(f"cx q[{i}],q[{i + 1}]")
        for i in range(n):
            q.op(f"rx({fmt(2 * h * dt)}) q[{i}]")
    q.measure_all()
    return q


def swap_test(k):
    n = 2 * k + 1
    q = Qasm(n, f"swap test between two {k}-qubit product states")
    rnd = random.Random(7)
    for i in range(1, n):
        q.op(f"ry({fmt(rnd.uniform(0, math.pi))}) q[{i}]")
    q.op("h q[0]")
    for i in range(k):
        q.op(f"cswap q[0],q[{1 + i}],q[{1 + k + i}]")
    q.op("h q[0]")
    q.lines.append("measure q[0] -> c[0];")
    return q


def ghz(n):
    q = Qasm(n, f"GHZ state on {n} qubits")
    q.op("h q[0]")
    for i in range(n - 1):
        q.op(f"cx q[{i}],q[{i + 1}]")
    q.measure_all()
    return q


def bernstein_vazirani(n, secret):
    q = Qasm(n, f"Bernstein-Vazirani, secret {secret:b}, oracle qubit {n - 1}")
    q.op(f"x q[{n - 1}]")
    for i in range(n):
        q.op(f"h q[{i}]")
    for i in range(n - 1):
        if secret >> i & 1:
            q.op(f"cx q[{i}],q[{n - 1}]")
    for i in range(n - 1):
        q.op(f"h q[{i}]")
    q.measure_all()
    return q


def qpe(t, phase):
    n = t + 1
    q = Qasm(n, f"phase estimation of u1({phase:.6f}) with {t} counting qubits")
    q.op(f"x q[{t}]")
    for i in range(t):
        q.op(f"h q[{i}]")
    for i in range(t):
        q.op(f"cu1({fmt(phase * 2 ** i)}) q[{i}],q[{t}]")
    # inverse QFT on the counting register
    for i in range(t // 2):
        q.op(f"swap q[{i}],q[{t - 1 - i}]")
    for i in reversed(range(t)):
        for j in reversed(range(i + 1, t)):
            q.op(f"cu1(-pi/{2 ** (j - i)}) q[{j}],q[{i}]")
        q.op(f"h q[{i}]")
    q.measure_all()
    return q


def adder():
    # 1-bit full adder (a, b, cin) -> (sum, cout) with Toffolis
    q = Qasm(4, "one-bit full adder: q0=a q1=b q2=cin q3=cout")
    q.op("x q[0]")
    q.op("x q[2]")
    q.op("ccx q[0],q[1],q[3]")
    q.op("cx q[0],q[1]")
    q.op("ccx q[1],q[2],q[3]")
    q.op("cx q[1],q[2]")
    q.op("cx q[0],q[1]")
    q.measure_all()
    return q


def multiply():
    # 2-bit by 1-bit product: q0q1 * q2 -> q3q4
    q = Qasm(5, "two-bit times one-bit multiplier, product in q3 q4")
    q.op("x q[0]")
    q.op("x q[1]")
    q.op("x q[2]")
    q.op("ccx q[0],q[2],q[3]")
    q.op("ccx q[1],q[2],q[4]")
    q.measure_all()
    return q


def grover(n):
    q = Qasm(n, f"one Grover iteration on {n} qubits marking |11..1>")
    for i in range(n):
        q.op(f"h q[{i}]")
    for _ in range(2):
        # oracle: multi-controlled Z via CCZ on three qubits
        q.op(f"h q[{n - 1}]")
        q.op(f"ccx q[0],q[1],q[{n - 1}]")
        q.op(f"h q[{n - 1}]")
        for i in range(n):
            q.op(f"h q[{i}]")
            q.op(f"x q[{i}]")
        q.op(f"h q[{n - 1}]")
        q.op(f"ccx q[0],q[1],q[{n - 1}]")
        q.op(f"h q[{n - 1}]")
        for i in range(n):
            q.op(f"x q[{i}]")
            q.op(f"h q[{i}]")
    q.measure_all()
    return q


def hidden_shift(n, shift):
    q = Qasm(n, f"hidden shift for inner-product bent function, shift {shift:b}")
    for i in range(n):
        q.op(f"h q[{i}]")
    for i in range(n):
        if shift >> i & 1:
            q.op(f"x q[{i}]")
    for i in range(0, n, 2):
        q.op(f"cz q[{i}],q[{i + 1}]")
    for i in range(n):
        if shift >> i & 1:
            q.op(f"x q[{i}]")
    for i in range(n):
        q.op(f"h q[{i}]")
    for i in range(0, n, 2):
        q.op(f"cz q[{i}],q[{i + 1}]")
    for i in range(n):
        q.op(f"h q[{i}]")
    q.measure_all()
    return q


def ring(n):
    return [(i, (i + 1) % n) for i in range(n)]


def circuits():
    rnd = random.Random(2026)
    six_edges = ring(6) + [(0, 3), (1, 4), (2, 5)]  # 3-regular
    yield "qaoa_n6", qaoa(6, six_edges, [0.41, 0.73], [0.37, 0.19], "QAOA MaxCut, 3-regular graph on 6 nodes, p=2")
    eight_edges = sorted({tuple(sorted(rnd.sample(range(8), 2))) for _ in range(12)})
    yield "qaoa_n8", qaoa(8, eight_edges, [0.52], [0.31], "QAOA MaxCut, random graph on 8 nodes, p=1")
    yield "qft_n4", qft(4)
    yield "qft_n6", qft(6)
    yield "ising_n6", ising(6, 3, 1.0, 0.7, 0.25)
    yield "ising_n10", ising(10, 2, 1.0, 0.7, 0.25)
    yield "swap_test_n5", swap_test(2)
    yield "swap_test_n7", swap_test(3)
    yield "ghz_n6", ghz(6)
    yield "bv_n6", bernstein_vazirani(6, 0b10110)
    yield "qpe_n5", qpe(4, 2 * math.pi * 0.3125)
    yield "adder_n4", adder()
    yield "multiply_n5", multiply()
    yield "grover_n4", grover(4)
    yield "hs_n6", hidden_shift(6, 0b011010)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default=str(pathlib.Path(__file__).resolve().parent.parent / "corpus"))
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, q in circuits():
        (out / f"{name}.qasm").write_text(q.text())
        print(name)


if __name__ == "__main__":
    main()
