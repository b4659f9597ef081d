// generated by gen_oracles.py; do not edit
#pragma once
namespace oracle {
// Phi(0.5, 2, 1.5)
inline constexpr long double lerch_a = 0.5542910011618995622690L;
// Phi(exp(0.6 pi i), 1, 3), real part
inline constexpr long double lerch_b_re = 0.2049005810969263985198L;
// Phi(exp(0.6 pi i), 1, 3), imaginary part
inline constexpr long double lerch_b_im = 0.1132141610878491827948L;
// Phi(-0.9+0.2i, 3, 0.7+0.4i), real part
inline constexpr long double lerch_c_re = -0.06008644083079416102949L;
// Phi(-0.9+0.2i, 3, 0.7+0.4i), imaginary part
inline constexpr long double lerch_c_im = -1.794803729954571207766L;
// 2F1(0.5,1.5;2.25;0.6)
inline constexpr long double hyp2f1_a = 1.322870882449858230191L;
// 2F1(1,1+2i;2+2i;0.3+0.8i), real part
inline constexpr long double hyp2f1_b_re = 0.6588121064150781898239L;
// 2F1(1,1+2i;2+2i;0.3+0.8i), imaginary part
inline constexpr long double hyp2f1_b_im = 0.4843852995525433317855L;
// 2F1(0.25,0.75;1.5;-0.95), near the unit circle
inline constexpr long double hyp2f1_c = 0.9135517781274234312641L;
// B(0.4+0.3i; 2+i, 3), real part
inline constexpr long double incbeta_re = 0.03242071257563557003289L;
// B(0.4+0.3i; 2+i, 3), imaginary part
inline constexpr long double incbeta_im = -0.01736287045434402820780L;
// psi1(2.5-1.25i), real part
inline constexpr long double trigamma_re = 0.3598821406983961970341L;
// psi1(2.5-1.25i), imaginary part
inline constexpr long double trigamma_im = 0.2185662068658308042710L;
// psi(0.001)
inline constexpr long double digamma_small = -1000.575571931810300471L;
// psi2(1234.5)
inline constexpr long double tetragamma_large = -6.567039209328715205162e-7L;
// H(0.5)
inline constexpr long double harmonic_half = 0.6137056388801093811655L;
// H(2)
inline constexpr long double harmonic_2 = 1.500000000000000000000L;
// H(1000)
inline constexpr long double harmonic_big = 7.485470860550344912657L;
// energy e_dir_bare_a: {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {}
inline constexpr long double e_dir_bare_a = -4.585343353539224870622e-10L;
// energy e_dir_bare_b: {'L': '1.3', 'Omega': mpf('12.56637061435917295385057353311801153678868'), 'lam': '2e-4', 'ratio': Fraction(7, 20)} {}
inline constexpr long double e_dir_bare_b = -1.424501504847000924928e-9L;
// energy e_neu_bare_a: {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'neumann': True}
inline constexpr long double e_neu_bare_a = -3.013745419636107987669e-10L;
// energy e_neu_bare_b: {'L': '1.3', 'Omega': mpf('12.56637061435917295385057353311801153678868'), 'lam': '2e-4', 'ratio': Fraction(7, 20)} {'neumann': True}
inline constexpr long double e_neu_bare_b = -9.250936687296701638004e-10L;
// energy e_dir_sm_a: {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'smeared': True, 'a0': '1e-3'}
inline constexpr long double e_dir_sm_a = 4.585445708176935246405e-9L;
// energy e_neu_sm_a: {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'neumann': True, 'smeared': True, 'a0': '1e-3'}
inline constexpr long double e_neu_sm_a = 4.238948485092476577974e-9L;
// energy e_dir_sm_half: {'L': '0.8', 'Omega': mpf('18.84955592153875943077586029967701730518311'), 'lam': '1e-4', 'ratio': Fraction(1, 4)} {'smeared': True, 'a0': '1e-2', 'alpha': '0.5'}
inline constexpr long double e_dir_sm_half = -1.196456801046277382735e-10L;
// Dirichlet bare at x = L/2
inline constexpr long double e_dir_bare_mid = -5.066059182116888572194e-10L;
// -dE/dL at fixed x/L, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {}
inline constexpr long double f_ratio_dir_bare = 2.285894630013904482433e-10L;
// -dE/dL at fixed x, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {}
inline constexpr long double f_pos_dir_bare = 7.590868860294990153504e-11L;
// -dE/dx, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {}
inline constexpr long double f_atom_dir_bare = 5.089359146614684890275e-10L;
// -dE/dL at fixed x/L, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'neumann': True}
inline constexpr long double f_ratio_neu_bare = 1.715624081360540753749e-10L;
// -dE/dL at fixed x, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'neumann': True}
inline constexpr long double f_pos_neu_bare = 3.242431825344946220831e-10L;
// -dE/dx, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'neumann': True}
inline constexpr long double f_atom_neu_bare = -5.089359146614684890275e-10L;
// -dE/dL at fixed x/L, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'smeared': True, 'a0': '1e-3'}
inline constexpr long double f_ratio_dir_sm = -9.885812485656948015833e-11L;
// -dE/dL at fixed x, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'smeared': True, 'a0': '1e-3'}
inline constexpr long double f_pos_dir_sm = -1.578031113610503745141e-11L;
// -dE/dx, {'L': 1, 'Omega': mpf('6.283185307179586476925286766559005768394338'), 'lam': '1e-4', 'ratio': Fraction(3, 10)} {'smeared': True, 'a0': '1e-3'}
inline constexpr long double f_atom_dir_sm = -2.769260457348814756897e-10L;
// -dE/dL at fixed x/L, {'L': '1.3', 'Omega': mpf('12.56637061435917295385057353311801153678868'), 'lam': '1e-4', 'ratio': Fraction(7, 20)} {'neumann': True, 'smeared': True, 'a0': '1e-2'}
inline constexpr long double f_ratio_neu_sm = -6.396653624084050643590e-11L;
// -dE/dL at fixed x, {'L': '1.3', 'Omega': mpf('12.56637061435917295385057353311801153678868'), 'lam': '1e-4', 'ratio': Fraction(7, 20)} {'neumann': True, 'smeared': True, 'a0': '1e-2'}
inline constexpr long double f_pos_neu_sm = -6.863307701916933224750e-11L;
// -dE/dx, {'L': '1.3', 'Omega': mpf('12.56637061435917295385057353311801153678868'), 'lam': '1e-4', 'ratio': Fraction(7, 20)} {'neumann': True, 'smeared': True, 'a0': '1e-2'}
inline constexpr long double f_atom_neu_sm = 1.333297365236807374743e-11L;
// -lambda^2 H(2)/(pi Omega), L=1, Omega=2pi
inline constexpr long double sum_rule_2pi = -7.599088773175332858291e-10L;
// three uniform atoms, Dirichlet bare, L=1, Omega=2pi
inline constexpr long double medium_e3 = -1.364364300286792096483e-9L;
// ten uniform atoms, fixed ratio, Dirichlet bare
inline constexpr long double medium_f10_ratio = 2.141203290095595971257e-9L;
// ten uniform atoms, fixed ratio, Dirichlet smeared alpha=1, a0=1e-3
inline constexpr long double medium_f10_ratio_smeared = -1.567548251224530774250e-9L;
// largest N with net attraction, fixed ratio
inline constexpr long double crit_ratio_n_below = 165723477520L;
// interpolated crossing, fixed ratio
inline constexpr long double crit_ratio_n_star = 165723477520.4765199738L;
// largest N with net attraction, fixed position
inline constexpr long double crit_pos_n_below = 57164730134L;
// interpolated crossing, fixed position
inline constexpr long double crit_pos_n_star = 57164730134.85179323095L;
// E4/lambda^4 at (0.3, 0.7), brute force with one Richardson step
inline constexpr long double pair_e4_37 = -0.002015133443062802273693L;
}  // namespace oracle
