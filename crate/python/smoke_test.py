"""Smoke test for the pydyck extension. Run after `pip install -e crates/py`."""

import random

import pydyck


def main():
    s = pydyck.ParenSeq("([)]")
    assert len(s) == 4 and s.types == 4
    assert pydyck.solve_k5(s, 3) == 2
    assert pydyck.dp_cubic(pydyck.ParenSeq("()"), 0) == 0
    assert pydyck.solve_k5(pydyck.ParenSeq("(((("), 1) == 2  # capped at k+1

    t = pydyck.ParenSeq("o0 o5 c5 c0", "tokens")
    assert t.types == 6 and t.is_balanced()
    assert t.format("tokens") == "o0 o5 c5 c0"
    assert s.reverse_complement().reverse_complement() == s
    assert s.heights() == [0, 1, 2, 1, 0]

    for seed in range(20):
        seq, edits = pydyck.generate(120, types=3, edits=4, seed=seed)
        want = pydyck.dp_cubic(seq, 6)
        assert want <= edits
        assert pydyck.solve_quadratic(seq, 6) == want
        assert pydyck.solve_k5(seq, 6) == want
        for strategy in ("greedy", "random"):
            assert pydyck.solve_fast(seq, 6, strategy=strategy, seed=seed) == want
    assert pydyck.generate(50, seed=1)[0].is_balanced()

    short = pydyck.ParenSeq("[(]{)")
    assert pydyck.exhaustive(short, 5) == pydyck.dp_cubic(short, 5)
    try:
        pydyck.exhaustive(pydyck.ParenSeq("()" * 8), 2)
    except ValueError:
        pass
    else:
        raise AssertionError("exhaustive should refuse n > 14")
    try:
        pydyck.ParenSeq("(x)")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown characters must not parse")

    stats = pydyck.solve_with_stats(pydyck.generate(400, edits=3, seed=9)[0], 3, fast=True)
    assert stats["distance"] <= 3 and stats["clusters"] >= 1

    rng = random.Random(4)
    a = [[rng.randint(-5, 5)]]
    for _ in range(30):
        a.append([a[-1][0] + rng.choice((-1, 0, 1))])
    a = [[x[0] + j for j in range(4)] for x in a]  # columns stay BD
    b = [[rng.randint(-3, 3) + i for i in range(25)] for _ in range(4)]
    b = [[row[0] + j // 2 for j in range(25)] for row in b]
    assert pydyck.minplus_bd(a, b) == pydyck.minplus_naive(a, b)

    print("pydyck smoke test passed")


if __name__ == "__main__":
    main()
