"""Import the built extension and exercise the main entry points.

Usage: cargo build -p ellipmono-python --release && python3 python/smoke_test.py
"""

import glob
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        import ellipmono
        return ellipmono
    except ImportError:
        pass
    libs = sorted(
        glob.glob(os.path.join(ROOT, "target", "*", "libellipmono.so"))
        + glob.glob(os.path.join(ROOT, "target", "*", "libellipmono.dylib")),
        key=os.path.getmtime,
    )
    if not libs:
        sys.exit("no built extension found; run `cargo build -p ellipmono-python` first")
    tmp = tempfile.mkdtemp()
    shutil.copy(libs[-1], os.path.join(tmp, "ellipmono.so"))
    sys.path.insert(0, tmp)
    import ellipmono
    return ellipmono


def main():
    em = load()

    table = em.CoefficientTable()
    assert str(table.b(0)) == "exp_half_pi"
    assert table.wallis(3) == "5/16"
    assert abs(table.ratio(1).mid - 3.778) < 1e-3
    assert table.c(1, "4").sign == "-"
    assert table.c(60, "4").sign == "-"
    assert table.c(60, "ratio(2)").sign == "+"

    alpha = em.alpha()
    assert alpha.to_decimal(6).startswith("0.81047")
    assert em.ExactValue("exp_half_pi - 4") == em.ExactValue("exp_half_pi") - em.ExactValue("4")
    assert abs(em.beta().mid - 0.2467322830170362) < 1e-15
    assert abs(em.agm_k("1/2").mid - 1.8540746773013719) < 1e-15
    assert abs(float(em.h_value("0.1")) - 0.3447458288) < 1e-9

    cert = em.certify_sequence("ratio_increasing", 60)
    assert cert.status == "Certified", cert.to_json()
    assert '"runtime_ms"' not in cert.to_json(timestamp=False)

    cert = em.certify_sequence("c_nonneg", 5, p="4")
    assert cert.status == "Refuted" and cert.witnesses[0].point.startswith("n = ")

    cert = em.grid_verify("P1_lower", density=20)
    assert cert.certified, cert.to_json()

    cert = em.sharpness_probe("P1_upper", epsilon="1/100")
    assert cert.status == "Refuted"

    q = em.j_quotient(3)
    assert len(q) == 3

    try:
        em.grid_verify("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown family accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
