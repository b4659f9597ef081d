#!/usr/bin/env python3
"""Reference values for the test suite, computed with mpmath (and numpy for the
pair double sum) directly from the mode series. Writes oracle_values.hpp.

Oscillating sums are evaluated at rational x/L = p/q by grouping the modes in
residue classes mod q, so every inner sum is smooth and nsum converges fast.
Forces are mpmath derivatives of the energy series, not the force series.

Usage: python3 gen_oracles.py > oracle_values.hpp
"""
import sys
from fractions import Fraction

import mpmath as mp
import numpy as np

mp.mp.dps = 40
PI = mp.pi


def periodic_sum(R, q, w, head_blocks=600):
    """sum_{j>=1} R(j) w(j mod q), w given on residues 1..q"""
    def block(k):
        return mp.fsum(R(k * q + r) * w[r] for r in range(1, q + 1))
    # explicit head past the smearing cutoff, nsum only on the smooth remainder
    head = mp.fsum(block(k) for k in range(head_blocks))
    return head + mp.nsum(block, [head_blocks, mp.inf], method="euler-maclaurin")


def sin2_weights(frac, q, neumann=False):
    p = frac.numerator * (q // frac.denominator)
    w = {}
    for r in range(1, q + 1):
        s = mp.sinpi(mp.mpf(p * r) / q)
        w[r] = 1 - s * s if neumann else s * s
    return w


def energy(L, Omega, lam, ratio, neumann=False, smeared=False, a0=0, alpha=1):
    """second-order energy at x = ratio*L; ratio is a Fraction"""
    L, Omega, lam, a0, alpha = map(mp.mpf, (L, Omega, lam, a0, alpha))
    q = ratio.denominator
    w = sin2_weights(ratio, q, neumann)

    def R(j):
        om = PI * j / L
        if not smeared:
            return -lam**2 / ((om + Omega) * PI * j)
        f = 2 / ((a0 * PI * j / L) ** 2 + 1)
        return lam**2 * f * f / (om * L) * (alpha / Omega - 1 / (om + Omega))
    return periodic_sum(R, q, w)


def forces(L, Omega, lam, ratio, **kw):
    """(fixed ratio, fixed position, atom) as derivatives of the grouped energy"""
    r = mp.mpf(ratio.numerator) / ratio.denominator
    h = mp.mpf(10) ** -12

    def E_ratio(Lv):
        return energy(Lv, Omega, lam, ratio, **kw)
    f_ratio = -mp.diff(E_ratio, mp.mpf(L), h=h)
    Lm, Om, lm = map(mp.mpf, (L, Omega, lam))
    neumann = kw.get("neumann", False)
    smeared = kw.get("smeared", False)
    a0 = mp.mpf(kw.get("a0", 0))
    alpha = mp.mpf(kw.get("alpha", 1))
    q = ratio.denominator
    p = ratio.numerator
    # d sin^2(pi j x/L)/dx = (pi j/L) sin(2 pi j x/L); cos^2 gives the negative
    wsin = {k: mp.sinpi(mp.mpf(2 * p * k) / q) for k in range(1, q + 1)}

    def Rd(j):
        om = PI * j / Lm
        sign = -1 if neumann else 1
        if not smeared:
            base = -lm**2 / ((om + Om) * PI * j)
        else:
            f = 2 / ((a0 * PI * j / Lm) ** 2 + 1)
            base = lm**2 * f * f / (om * Lm) * (alpha / Om - 1 / (om + Om))
        return sign * base * PI * j / Lm
    dEdx = periodic_sum(Rd, q, wsin)
    f_atom = -dEdx
    # dE/dL at fixed x = dE/dL at fixed x/L - (x/L) dE/dx
    f_pos = f_ratio + r * dEdx
    return f_ratio, f_pos, f_atom


def harmonic(x):
    return mp.digamma(mp.mpf(x) + 1) + mp.euler


# ---- critical atom number, uniform bare Dirichlet medium, L = 1 ----

def uniform_ratio_force(M, c, lam):
    M = mp.mpf(M)
    return lam**2 * M / (2 * PI**2) * (mp.psi(1, 1 + c) - mp.psi(1, 1 + c / M) / M**2)


def position_extra_direct(M, c, lam):
    """-sum_n sum_j lam^2 x_n sin(2 pi j x_n)/(pi j + c pi), x_n = n/M, by residue grouping"""
    def R(j):
        return mp.mpf(1) / (PI * (j + c))
    total = mp.mpf(0)
    for n in range(1, M):
        w = {r: mp.sinpi(mp.mpf(2 * n * r) / M) for r in range(1, M + 1)}
        total += mp.mpf(n) / M * periodic_sum(R, M, w)
    return -lam**2 * total


def cot_psi_sum(M, c, K=2000):
    """sum_{r=1}^{M-1} cot(pi r/M) psi((r+c)/M): exact head, Euler-Maclaurin body"""
    M = int(M)
    Mm = mp.mpf(M)

    def u(r):
        return mp.cot(PI * r / Mm) * (mp.psi(0, (r + c) / Mm) - mp.psi(0, 1 + (c - r) / Mm))
    R = (M - 1) // 2
    if R <= 2 * K:
        return mp.fsum(u(r) for r in range(1, R + 1))
    head = mp.fsum(u(r) for r in range(1, K))
    pts = [mp.mpf(K)]
    while pts[-1] * 2 < R:
        pts.append(pts[-1] * 2)
    pts.append(mp.mpf(R))
    integral = mp.quad(u, pts)
    body = integral + (u(K) + u(R)) / 2
    for k, b in ((1, mp.bernoulli(2)), (2, mp.bernoulli(4)), (3, mp.bernoulli(6))):
        n = 2 * k - 1
        body += b / mp.factorial(2 * k) * (mp.diff(u, R, n) - mp.diff(u, K, n))
    return head + body


def uniform_position_force(M, c, lam):
    extra = -lam**2 / (2 * PI * M) * cot_psi_sum(M, c)
    return uniform_ratio_force(M, c, lam) + extra


def first_crossing(F, target, lo, hi):
    """integer bracket [m, m+1] with F(m) < target <= F(m+1), by Illinois false position"""
    flo, fhi = F(lo) - target, F(hi) - target
    assert flo < 0 < fhi
    side = 0
    for _ in range(80):
        m = int(lo + (hi - lo) * (-flo) / (fhi - flo))
        m = min(max(m, lo + 1), hi - 1)
        fm = F(m) - target
        # Illinois step: halve the stale endpoint so the bracket shrinks from both sides
        if fm < 0:
            lo, flo = m, fm
            if side == -1:
                fhi /= 2
            side = -1
        else:
            hi, fhi = m, fm
            if side == 1:
                flo /= 2
            side = 1
        if hi - lo <= 1:
            break
    assert hi - lo == 1, (lo, hi)
    return lo, lo + (-flo) / (fhi - flo)


# ---- fourth-order pair energy, numpy brute force ----

def pair_energy_bruteforce(xa, xb, L=1.0, Omega=2 * np.pi, M=4000):
    """lambda^4-free double sum over j, l <= M (square cutoff), long double"""
    ld = np.longdouble
    pi = ld(np.pi)
    W = ld(L) * ld(Omega)
    l = np.arange(1, M + 1, dtype=ld)
    sla, slb = np.sin(pi * l * ld(xa) / ld(L)), np.sin(pi * l * ld(xb) / ld(L))
    total = ld(0)
    for j in range(1, M + 1):
        jj = ld(j)
        sja, sjb = np.sin(pi * jj * ld(xa) / ld(L)), np.sin(pi * jj * ld(xb) / ld(L))
        pre = -ld(L) ** 2 / (pi**3 * jj * l * ld(Omega) * (jj + l) * (pi * jj + W) ** 2 * (pi * l + W))
        A = 2 * (2 * pi * W * (jj + 2 * l) + pi**2 * jj * (jj + l) + 2 * W**2) * sja * sjb * sla * slb
        B = W * sja**2 * ((pi * jj + 3 * pi * l + 2 * W) * sla**2 + 2 * pi * (jj + l) * slb**2)
        C = W * sjb**2 * (2 * pi * (jj + l) * sla**2 + (pi * jj + 3 * pi * l + 2 * W) * slb**2)
        total += np.sum(pre * (A + B + C))
    return total


def main():
    out = []

    def emit(name, value, note):
        out.append(f"// {note}")
        out.append(f"inline constexpr long double {name} = {mp.nstr(value, 22, strip_zeros=False)}L;")

    two_pi = 2 * PI
    F = Fraction

    # special functions
    emit("lerch_a", mp.lerchphi(mp.mpf("0.5"), 2, mp.mpf("1.5")), "Phi(0.5, 2, 1.5)")
    z = mp.expj(2 * PI * mp.mpf("0.3"))
    v = mp.lerchphi(z, 1, 3)
    emit("lerch_b_re", v.real, "Phi(exp(0.6 pi i), 1, 3), real part")
    emit("lerch_b_im", v.imag, "Phi(exp(0.6 pi i), 1, 3), imaginary part")
    v = mp.lerchphi(mp.mpc("-0.9", "0.2"), 3, mp.mpc("0.7", "0.4"))
    emit("lerch_c_re", v.real, "Phi(-0.9+0.2i, 3, 0.7+0.4i), real part")
    emit("lerch_c_im", v.imag, "Phi(-0.9+0.2i, 3, 0.7+0.4i), imaginary part")
    emit("hyp2f1_a", mp.hyp2f1(mp.mpf("0.5"), mp.mpf("1.5"), mp.mpf("2.25"), mp.mpf("0.6")), "2F1(0.5,1.5;2.25;0.6)")
    v = mp.hyp2f1(1, mp.mpc(1, 2), mp.mpc(2, 2), mp.mpc("0.3", "0.8"))
    emit("hyp2f1_b_re", v.real, "2F1(1,1+2i;2+2i;0.3+0.8i), real part")
    emit("hyp2f1_b_im", v.imag, "2F1(1,1+2i;2+2i;0.3+0.8i), imaginary part")
    v = mp.hyp2f1(mp.mpf("0.25"), mp.mpf("0.75"), mp.mpf("1.5"), mp.mpf("-0.95"))
    emit("hyp2f1_c", v, "2F1(0.25,0.75;1.5;-0.95), near the unit circle")
    v = mp.betainc(mp.mpc(2, 1), 3, 0, mp.mpc("0.4", "0.3"))
    emit("incbeta_re", v.real, "B(0.4+0.3i; 2+i, 3), real part")
    emit("incbeta_im", v.imag, "B(0.4+0.3i; 2+i, 3), imaginary part")
    v = mp.psi(1, mp.mpc("2.5", "-1.25"))
    emit("trigamma_re", v.real, "psi1(2.5-1.25i), real part")
    emit("trigamma_im", v.imag, "psi1(2.5-1.25i), imaginary part")
    emit("digamma_small", mp.psi(0, mp.mpf("0.001")), "psi(0.001)")
    emit("tetragamma_large", mp.psi(2, mp.mpf("1234.5")), "psi2(1234.5)")
    emit("harmonic_half", harmonic("0.5"), "H(0.5)")
    emit("harmonic_2", harmonic(2), "H(2)")
    emit("harmonic_big", harmonic(1000), "H(1000)")

    # single-atom energies
    cases = [
        ("e_dir_bare_a", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)), {}),
        ("e_dir_bare_b", dict(L="1.3", Omega=4 * PI, lam="2e-4", ratio=F(7, 20)), {}),
        ("e_neu_bare_a", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)), dict(neumann=True)),
        ("e_neu_bare_b", dict(L="1.3", Omega=4 * PI, lam="2e-4", ratio=F(7, 20)), dict(neumann=True)),
        ("e_dir_sm_a", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)), dict(smeared=True, a0="1e-3")),
        ("e_neu_sm_a", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)),
         dict(neumann=True, smeared=True, a0="1e-3")),
        ("e_dir_sm_half", dict(L="0.8", Omega=6 * PI, lam="1e-4", ratio=F(1, 4)),
         dict(smeared=True, a0="1e-2", alpha="0.5")),
    ]
    for name, p, kw in cases:
        e = energy(p["L"], p["Omega"], p["lam"], p["ratio"], **kw)
        emit(name, e, f"energy {name}: {p} {kw}")
    emit("e_dir_bare_mid", energy(1, two_pi, "1e-4", F(1, 2)), "Dirichlet bare at x = L/2")

    # forces, as derivatives of the energy
    fcases = [
        ("dir_bare", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)), {}),
        ("neu_bare", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)), dict(neumann=True)),
        ("dir_sm", dict(L=1, Omega=two_pi, lam="1e-4", ratio=F(3, 10)), dict(smeared=True, a0="1e-3")),
        ("neu_sm", dict(L="1.3", Omega=4 * PI, lam="1e-4", ratio=F(7, 20)), dict(neumann=True, smeared=True, a0="1e-2")),
    ]
    for name, p, kw in fcases:
        fr, fp, fa = forces(p["L"], p["Omega"], p["lam"], p["ratio"], **kw)
        emit(f"f_ratio_{name}", fr, f"-dE/dL at fixed x/L, {p} {kw}")
        emit(f"f_pos_{name}", fp, f"-dE/dL at fixed x, {p} {kw}")
        emit(f"f_atom_{name}", fa, f"-dE/dx, {p} {kw}")

    # sum rule
    lam = mp.mpf("1e-4")
    emit("sum_rule_2pi", -lam**2 * harmonic(2) / (PI * two_pi), "-lambda^2 H(2)/(pi Omega), L=1, Omega=2pi")

    # media
    e3 = mp.fsum(energy(1, two_pi, "1e-4", F(n, 4)) for n in (1, 2, 3))
    emit("medium_e3", e3, "three uniform atoms, Dirichlet bare, L=1, Omega=2pi")
    f10 = mp.fsum(forces(1, two_pi, "1e-4", F(n, 11))[0] for n in range(1, 11))
    emit("medium_f10_ratio", f10, "ten uniform atoms, fixed ratio, Dirichlet bare")
    f10s = mp.fsum(forces(1, two_pi, "1e-4", F(n, 11), smeared=True, a0="1e-3")[0] for n in range(1, 11))
    emit("medium_f10_ratio_smeared", f10s, "ten uniform atoms, fixed ratio, Dirichlet smeared alpha=1, a0=1e-3")

    # critical atom number, L=1, Omega=2pi, lambda=2pi 1e-6
    c = mp.mpf(2)
    lam6 = two_pi * mp.mpf("1e-6")
    target = PI / 24
    for M in (3, 5, 8):
        a = position_extra_direct(M, c, lam6)
        b = -lam6**2 / (2 * PI * M) * cot_psi_sum(M, c)
        assert abs(a - b) < mp.mpf(10) ** -30 * abs(a), (M, a, b)
        fr_direct = mp.fsum(forces(1, two_pi, lam6, F(n, M))[0] for n in range(1, M))
        assert abs(fr_direct - uniform_ratio_force(M, c, lam6)) < mp.mpf(10) ** -20 * abs(fr_direct)
    m_lo, m_star = first_crossing(lambda M: uniform_ratio_force(M, c, lam6), target, 2, 10**13)
    emit("crit_ratio_n_below", m_lo - 1, "largest N with net attraction, fixed ratio")
    emit("crit_ratio_n_star", m_star - 1, "interpolated crossing, fixed ratio")
    m_lo, m_star = first_crossing(lambda M: uniform_position_force(M, c, lam6), target, 2, 10**12)
    emit("crit_pos_n_below", m_lo - 1, "largest N with net attraction, fixed position")
    emit("crit_pos_n_star", m_star - 1, "interpolated crossing, fixed position")

    # pair energy, square cutoff with Richardson in 1/M
    e1 = pair_energy_bruteforce(0.3, 0.7, M=2000)
    e2 = pair_energy_bruteforce(0.3, 0.7, M=4000)
    emit("pair_e4_37", mp.mpf(float(2 * e2 - e1)), "E4/lambda^4 at (0.3, 0.7), brute force with one Richardson step")

    print("// generated by gen_oracles.py; do not edit")
    print("#pragma once")
    print("namespace oracle {")
    print("\n".join(out))
    print("}  // namespace oracle")


if __name__ == "__main__":
    sys.exit(main())
