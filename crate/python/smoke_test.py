"""Smoke test for the superspin Python extension.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import json
import sys

import superspin
from superspin import GradedRep, SqrtNumber, StrictPartition


def check(cond, label):
    print(("ok   " if cond else "FAIL ") + label)
    return bool(cond)


def main():
    results = []
    results.append(check(superspin.SCHEMA == "superspin/1", "schema tag"))

    r2 = SqrtNumber.sqrt(2)
    one = SqrtNumber(1)
    results.append(check((one + r2) * (r2 - one) == one, "(1+sqrt2)(sqrt2-1) = 1"))
    results.append(check((one + r2).inverse() == r2 - one, "inverse of 1+sqrt2"))
    results.append(check((r2 - SqrtNumber(3, 2)).sign() == -1, "sign(sqrt2 - 3/2) < 0"))
    results.append(check(SqrtNumber.sqrt(8) == SqrtNumber(2) * r2, "sqrt8 = 2 sqrt2"))
    try:
        SqrtNumber(0).inverse()
        results.append(check(False, "inverse of zero raises"))
    except ZeroDivisionError:
        results.append(check(True, "inverse of zero raises"))

    counts = [len(superspin.strict_partitions(n)) for n in range(1, 8)]
    results.append(check(counts == [1, 1, 2, 2, 3, 4, 5], "strict partition counts"))
    results.append(check(counts == [len(superspin.odd_partitions(n)) for n in range(1, 8)], "odd partition counts"))

    alpha = StrictPartition("3,1")
    results.append(check(alpha.tableaux() == [[[1, 2, 3], [4]], [[1, 2, 4], [3]]], "tableaux of (3,1)"))
    results.append(check(alpha.spectrum()[0] == ([0, 1, 2, 0], [0, 1, 3, 0]), "spectrum of (3,1)"))
    try:
        StrictPartition([1, 3])
        results.append(check(False, "non-strict input rejected"))
    except ValueError:
        results.append(check(True, "non-strict input rejected"))

    rep = GradedRep.build(alpha)
    ok, failed = rep.verify()
    results.append(check(ok and not failed and rep.dim == 16, "plain (3,1) passes its relations"))
    results.append(check(sorted(rep.spectrum()) == [[0, 1, 0, 3], [0, 1, 3, 0]], "plain (3,1) spectrum"))
    results.append(check(rep.classify() == ("M(2,2)", 4), "plain (3,1) classification"))
    bad_ok, bad_failed = rep.with_flipped_entry(0).verify()
    results.append(check(not bad_ok and bad_failed, "flipped sign is caught"))
    again = GradedRep.from_json(rep.to_json())
    results.append(check(again.verify()[0] and again.dim == rep.dim, "JSON round trip"))

    trep = GradedRep.build(StrictPartition([4]), tensor=True)
    results.append(check(trep.verify()[0] and trep.classify() == ("Q(8)", 1), "tensor (4) is Q(8)"))

    report = json.loads(superspin.decompose_regular(4))
    types = [b["type"] for b in report["blocks"]]
    results.append(check(types == [{"type": "Q", "r": 2}, {"type": "M", "r": 2, "s": 2}], "regular A_4 blocks"))

    results.append(check(superspin.tensor_type(("Q", 1, 0), ("Q", 1, 0)) == "M(1,1)", "Q(1) x Q(1)"))
    results.append(check(superspin.tensor_type(("M", 1, 1), ("Q", 2, 0)) == "Q(4)", "M(1,1) x Q(2)"))

    dot = superspin.branching_graph(3, dot=True)
    results.append(check(dot.count("[label=") == 4, "branching graph DOT"))

    checks = json.loads(superspin.check_all(3))
    results.append(check(checks["all_pass"] and len(checks["criteria"]) == 10, "check_all(3)"))

    passed = sum(results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
