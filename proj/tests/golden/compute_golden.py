#!/usr/bin/env python3
# Copyright 2026 The dqdcluster Authors
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
"""Independent high-precision evaluation of the frozen golden values.

Run once; the printed numbers are pasted into golden_values.txt and
the C++ tests read them back. Nothing here shares code with the library.
"""
import itertools
import mpmath as mp

mp.mp.dps = 40

COULOMB_MEV_NM = mp.mpf("1439.96")  # e^2 / (4 pi eps0), meV nm
HBAR_MEV_NS = mp.mpf("6.582119e-4")  # meV ns
EPS_R = mp.mpf("12.9")
A, B = mp.mpf(200), mp.mpf(2000)
TC, EC = mp.mpf("0.01"), mp.mpf("5.0")


def sin2(eps):
    # sin^2 of the mixing angle, from the arctan form directly
    theta = mp.atan(2 * TC / (eps - mp.sqrt(4 * TC**2 + eps**2)))
    return mp.sin(theta) ** 2


def bracket(a, b):
    return 2 / b - 2 / mp.sqrt(a**2 + b**2)


ecc_max = COULOMB_MEV_NM / EPS_R * bracket(A, B)
h0 = COULOMB_MEV_NM / EPS_R * (2 / B + 2 / mp.sqrt(A**2 + B**2))
crosstalk = (2 / (2 * B) - 2 / mp.sqrt(A**2 + 4 * B**2)) / bracket(A, B)
ecc_plateau = ecc_max * sin2(EC / 2)

# ramp phase by tanh-sinh quadrature in epsilon, split at the crossing
tau1 = mp.mpf(1)
ramp_eps = mp.quad(lambda e: ecc_max * sin2(e), [-EC / 2, 0, EC / 2])
ramp_phase_one = tau1 / EC * ramp_eps / HBAR_MEV_NS  # one ramp
tau2 = (mp.pi - 2 * ramp_phase_one) * HBAR_MEV_NS / ecc_plateau
tau2_rect = mp.pi * HBAR_MEV_NS / ecc_plateau


def exact_mean_fidelity_enum(n, sigma):
    tot = mp.mpf(0)
    for z in itertools.product((0, 1), repeat=n):
        for w in itertools.product((0, 1), repeat=n):
            d = sum((z[i] * z[i + 1]) != (w[i] * w[i + 1]) for i in range(n - 1))
            tot += mp.e ** (-sigma**2 * d / 2)
    return tot / mp.mpf(4) ** n


def exact_mean_fidelity_tm(n, sigma):
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    v = [mp.mpf(1)] * 4
    for _ in range(n - 1):
        v = [sum(v[i] * mp.e ** (-sigma**2 * ((p[0] * q[0]) != (p[1] * q[1])) / 2)
                 for i, p in enumerate(pairs)) for q in pairs]
    return sum(v) / mp.mpf(4) ** n


s = 0.03 * mp.pi
assert abs(exact_mean_fidelity_enum(5, s) - exact_mean_fidelity_tm(5, s)) < mp.mpf("1e-30")

print("ecc_max_mev", mp.nstr(ecc_max, 17))
print("coulomb_background_mev", mp.nstr(h0, 17))
print("crosstalk_ratio", mp.nstr(crosstalk, 17))
print("ecc_plateau_mev", mp.nstr(ecc_plateau, 17))
print("ramp_phase_rad_tau1_1ns", mp.nstr(ramp_phase_one, 17))
print("hold_time_ns_tau1_1ns", mp.nstr(tau2, 17))
print("hold_time_ns_tau1_0", mp.nstr(tau2_rect, 17))
print("exact_fidelity_n20_s003pi", mp.nstr(exact_mean_fidelity_tm(20, s), 17))
print("exact_fidelity_n2_s003pi", mp.nstr((5 + 3 * mp.e ** (-s**2 / 2)) / 8, 17))
