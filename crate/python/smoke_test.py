#!/usr/bin/env python3
"""Smoke test for the qzeta_py extension module.

Locates the cdylib produced by `cargo build -p qzeta-py` (release preferred),
copies it next to this script under the importable name, and exercises the
bindings end to end.
"""

import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def locate_and_stage():
    suffix = {"darwin": ".dylib"}.get(sys.platform, ".so")
    prefix = "" if sys.platform == "win32" else "lib"
    candidates = [
        ROOT / "target" / profile / f"{prefix}qzeta_py{suffix}"
        for profile in ("release", "debug")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit(
            "qzeta_py cdylib not found; run `cargo build -p qzeta-py` first "
            f"(looked at: {', '.join(str(c) for c in candidates)})"
        )
    staged = HERE / "qzeta_py.so"
    shutil.copyfile(built, staged)
    return staged


def main():
    locate_and_stage()
    sys.path.insert(0, str(HERE))
    import qzeta_py as qz

    ctx = qz.QContext("1/2", digits=30)

    # naive vs accelerated: same value, far fewer terms
    z2 = qz.zeta_q(2, ctx)
    t1 = qz.bbb_t1("0", ctx)
    assert z2.value[:25] == t1.value[:25], (z2.value, t1.value)
    assert t1.terms < z2.terms, (t1.terms, z2.terms)

    # known 32-digit reference for zeta[2] at q = 1/2
    ref = "0.686008472189872090120053722873"
    assert z2.value[: len(ref)] == ref, z2.value

    # generating function at a = 1/4: both accelerated routes agree with it
    lhs = qz.genfunc_lhs("1/4", ctx)
    for r in (qz.bbb_t1("1/4", ctx), qz.bbb_t2("1/4", ctx)):
        assert lhs.value[:25] == r.value[:25], (lhs.value, r.value)

    # zeta[3] three ways
    z3 = qz.zeta_q(3, ctx)
    v1 = qz.zeta3_accelerated(1, ctx)
    amd = qz.zeta3_amdeberhan_series(ctx)
    assert z3.value[:25] == v1.value[:25] == amd.value[:25]
    alt = qz.zeta3_alt(ctx)
    v2 = qz.zeta3_accelerated(2, ctx)
    assert alt.value[:25] == v2.value[:25]

    # exact telescoping certificates
    assert qz.verify_bbb_pair("1/4", ctx, 8) == "0"
    assert qz.verify_zeta3_pair(1, qz.QContext("3/2", digits=20), 8) == "0"
    assert qz.verify_zeta3_pair(2, qz.QContext("2", digits=20), 8) == "0"

    # exact rational round-trip
    from fractions import Fraction

    frac = Fraction(int(z2.numerator), int(z2.denominator))
    assert abs(float(frac) - 0.686008472189872) < 1e-12

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
