"""Smoke test for the hermicode extension module.

Build and install first, e.g. `maturin develop --release` from crates/python.
"""

import hermicode


def main():
    f = hermicode.Field(3)
    assert (f.p, f.q, f.order) == (3, 3, 9)
    w = f.omega
    assert f.pow(w, 8) == 1 and all(f.pow(w, e) != 1 for e in range(1, 8))
    for a in f.elements():
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        if a:
            assert f.mul(a, f.inv(a)) == 1
        assert f.frobenius(f.frobenius(a)) == a
        assert f.norm(a) in {0, 1, 2}

    assert len(hermicode.points(3)) == 28

    code = hermicode.Code(4, 3)
    assert (code.n, code.k) == (15, 4)
    assert code.is_cyclic()
    msg = [1, 0, f.omega, 3]
    cw = code.encode(msg)
    rows = code.generator()
    assert cw != [0] * 15 and len(rows) == 4

    counts = code.weight_enumerator()
    assert sum(counts.values()) == 16**4
    assert min(w for w in counts if w) == 10 == code.min_distance()
    assert counts == code.weight_enumerator("reduced")
    assert sum(1 for s in code.witness() if s) == 10

    m2 = hermicode.Code(5, 2).weight_enumerator()
    assert m2 == {0: 1, 20: 144, 24: 480}

    claims = hermicode.verify(4)
    assert claims and all(c["status"] != "fail" for c in claims)

    try:
        hermicode.Field(6)
    except ValueError:
        pass
    else:
        raise AssertionError("q = 6 accepted")
    try:
        hermicode.Code(7, 5).weight_enumerator("exhaustive")
    except OverflowError:
        pass
    else:
        raise AssertionError("size guard not raised")

    print("smoke test passed")


if __name__ == "__main__":
    main()
