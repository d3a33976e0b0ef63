"""Smoke test for the edgebetti Python module.

Uses an installed `edgebetti` if there is one, otherwise the library built by
`cargo build -p edgebetti-py --features extension-module --release`.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import edgebetti

        return edgebetti
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[1]
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libedgebetti_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("edgebetti", str(lib))
            spec = importlib.util.spec_from_loader("edgebetti", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("edgebetti not found; build it first (see README)")


def main():
    eb = load()

    g = eb.Graph.g_rb(5, 3)
    assert (g.n, g.edge_count()) == (13, 24)
    assert g.is_chordal() and g.induced_matching_number() == 5
    assert g.label(12) == "w_2"

    t = eb.betti_table(g)
    assert t.get(1, 1) == 24 and t.get(6, 1) == 925 and t.get(8, 5) == 2
    assert t.extremal() == [(8, 5, 2), (9, 4, 1), (12, 1, 1)]
    assert (t.regularity(), t.projective_dimension()) == (5, 12)
    assert t == eb.BettiTable.from_json(t.to_json())
    assert t == eb.betti_table(g, field="gf2", jobs=1)
    assert eb.hilbert_numerator(g) == t.alternating_sum()

    p5 = eb.Graph.path(5)
    t5 = eb.betti_table(p5)
    assert str(t5).strip() == "1 . . .\n. 4 3 .\n. . 1 1"
    assert eb.certified_positions(p5) == sorted((i, j) for i, j, _ in t5.entries())

    cert = eb.find_certificate(g, 8, 5)
    assert json.loads(cert)["type"] == [8, 5]
    assert eb.validate_certificate(g, cert) == (8, 5)
    assert eb.find_certificate(p5, 4, 2) is None

    for text in (eb.verify_theorem(3, 2), eb.verify_first_step(3), eb.verify_g_pr1(5, 2),
                 eb.verify_support(eb.Graph.star_triangle(3)), eb.verify_reg_eq_indmatch(p5)):
        assert json.loads(text)["status"] == "pass", text

    try:
        eb.Graph(3, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("loop edge accepted")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
