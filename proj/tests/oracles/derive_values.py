"""High-precision reference values frozen into the unit tests.

Run with: python3 tests/oracles/derive_values.py
Every value is computed with mpmath at 40 significant digits, directly from the
model formulas, without reference to the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)
KAPPA = 2 * mp.pi * mp.mpf("2.99792458e-5")  # rad/fs per cm^-1

# Defaults
W0, S0, A0, T2 = mp.mpf(14000), mp.mpf(500), mp.mpf(1), mp.mpf(120)
WP, WR = mp.mpf(12500), mp.mpf(15500)
WAC, DELTA, K, G = mp.mpf(500), mp.mpf(120), mp.mpf(18), mp.mpf(9)
WPL, WMI = WAC + DELTA, WAC - DELTA
C = 2 * I * DELTA / (K + 2 * I * DELTA)


def sinc(z):
    return mp.mpf(1) if z == 0 else mp.sin(z) / z


def pump(z):
    return A0 / (z - 2 * W0 + I * S0)


def twin(zs, wr, T1):
    a = KAPPA * (zs - W0)
    b = KAPPA * (wr - W0)
    tot = 0
    for ti, tj in ((T1, T2), (T2, T1)):
        x = a * ti / 2 + b * tj / 2
        tot += sinc(x) * mp.exp(I * x)
    return pump(zs + wr) * tot


def probe(z):
    return A0 / (z - W0 + I * S0)


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: {mp.nstr(v.real, 17)} {mp.nstr(v.imag, 17)}")


def main():
    show("kappa*500", KAPPA * 500)
    show("twin(13700,15500;T1=110)", twin(mp.mpf(13700), WR, 110))
    show("twin(13700+18i,15500;T1=110)", twin(mp.mpc(13700, 18), WR, 110))
    show("twin(12210.5-27i,15500;T1=10)", twin(mp.mpc(12210.5, -27), WR, 10))

    # Classical window at nu = wp + 380, Omega = w- - i g, gamma = 2g
    nu = WP + 380
    Om = WMI - I * G
    show("window_classical", mp.conj(probe(nu)) * probe(nu + 2 * I * G) / (nu - WP - Om))

    # (1,1) window at nu_s = wp - 620, Omega = -w+ - i g, gamma = 2g, T1 = 110
    nus = WP - 620
    Om = -WPL - I * G
    show("window_q11", mp.conj(twin(nus, WR, 110)) * twin(WP + Om - 2 * I * G, WR, 110) / (nus - WP - Om))

    # Correlated-separable (1,1) at nu_s - wp = -620, T1 = 110
    x = nus - WP
    pa = 1 / (x + WPL + I * G)
    pb = 1 / (x + WMI + I * (G + K))
    br = pa / (2 * G) - C / (2 * G + K) * (pa - pb)
    show("sep11_correlated", (abs(twin(nus, WR, 110)) ** 2 * br).imag)

    # Matter correlation functions at t1 = 37 fs, t2 = 55 fs
    t1, t2 = mp.mpf(37), mp.mpf(55)
    g, k, wm, wpl = KAPPA * G, KAPPA * K, KAPPA * WMI, KAPPA * WPL
    fi = I * mp.exp(-g * (t1 + 2 * t2)) * (mp.exp(-I * wm * t1) - C * mp.exp(-k * t2) *
                                           (mp.exp(-I * wm * t1) - mp.exp(-(k + I * wpl) * t1)))
    fii = -I * mp.exp(-g * (t1 + 2 * t2)) * (mp.exp(I * wpl * t1) - C * mp.exp(-k * t2) *
                                             (mp.exp(I * wpl * t1) - mp.exp(-(k - I * wm) * t1)))
    show("f_i(37,55)", fi)
    show("f_ii(37,55)", fii)

    # Absorption at omega_a - delta with omega_a = wp + wac
    wa = WP + WAC
    w = wa - DELTA
    s = 1 / (K + 2 * I * DELTA) * ((K + I * DELTA) / (w - (wa - DELTA) + I * G) +
                                   I * DELTA / (w - (wa + DELTA) + I * (G + K)))
    show("absorption(omega_a-delta)", -s.imag)

    # Full signals at T = 0 and T = 400 fs
    def bracket(R, T, oa, ob):
        return mp.exp(-2 * g * T) * (R(2 * G, oa) - C * mp.exp(-k * T) * (R(2 * G + K, oa) - R(2 * G + K, ob)))

    for T in (mp.mpf(0), mp.mpf(400)):
        nu = WP + 620
        Rc = lambda gam, om: mp.conj(probe(nu)) * probe(nu + I * gam) / (nu - WP - om)
        s = bracket(Rc, T, WMI - I * G, WPL - I * (G + K)) - bracket(Rc, T, -WPL - I * G, -WMI - I * (G + K))
        show(f"fsrs(+620,T={int(T)})", -s.imag)
        R21 = lambda gam, om: mp.conj(twin(nu, WR, 110)) * twin(nu + I * gam, WR, 110) / (nu - WP - om)
        show(f"ifsrs21(+620,T={int(T)},T1=110)", -bracket(R21, T, WMI - I * G, WPL - I * (G + K)).imag)
        nu1 = WP - 380
        R11 = lambda gam, om: mp.conj(twin(nu1, WR, 10)) * twin(WP + om - I * gam, WR, 10) / (nu1 - WP - om)
        show(f"ifsrs11(-380,T={int(T)},T1=10)", -bracket(R11, T, -WPL - I * G, -WMI - I * (G + K)).imag)

    # Two-frequency (2,1) at nu1 = wp + 380, nu2 = wp + 620, T = 100 fs, T1 = 110
    T = mp.mpf(100)

    def term(a, b):
        ma = 1 / (a - WP - WMI + I * G)
        pa = 1 / (a - WP - WPL + I * (G + K))
        mb = 1 / (b - WP - WMI + I * G)
        pb = 1 / (b - WP - WPL + I * (G + K))
        st = twin(a, WR, 110) * (mb / (2 * G) - C / (K + 2 * G) * (mb - pb))
        it = I * twin(b, WR, 110) * mp.exp(I * KAPPA * (b - a) * T) * (
            ma / (b - a - 2 * I * G) - C / (b - a - I * (2 * G + K)) * (ma - pa))
        return mp.conj(twin(a, WR, 110)) * (st + it)

    show("ifsrs21_two_freq(380,620,T=100)", (term(WP + 380, WP + 620) + term(WP + 620, WP + 380)).imag)

    # Time-domain amplitude at t = 0 and the (0,1) window, by adaptive quadrature
    c = 2 * W0 - WR
    pts = [c - 20 * S0 + j * S0 for j in range(41)]
    v = mp.quad(lambda x: twin(x, WR, 110), pts) * KAPPA / (2 * mp.pi)
    show("twin_time(t=0,T1=110)", v)
    Om = WMI - I * G
    pts2 = sorted(set(pts + [WP + WMI]))
    v = mp.quad(lambda x: mp.conj(twin(x, WR, 110)) * twin(x + 2 * I * G, WR, 110) / (x - WP - Om), pts2) / (2 * mp.pi)
    show("window_q01(T1=110)", v)


if __name__ == "__main__":
    main()
