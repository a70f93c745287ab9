"""Smoke tests for the python module against the built extension."""

import os
import tempfile

import taxicab


def test_counts():
    assert taxicab.count(2, 50, 2) == 2
    assert taxicab.count(2, 50, 2, max_part=25) == 1
    assert taxicab.count(2, 50, 10) == 4
    assert taxicab.count(3, 1729, 2) == 2
    assert taxicab.count(1, 4, 2) == 2


def test_representations():
    reps = taxicab.representations(2, 20, 5)
    assert reps == [[1, 1, 1, 1, 4], [2, 2, 2, 2, 2]]
    assert taxicab.representations(2, 3, 2) == []


def test_squares():
    assert taxicab.is_sum_of_j_squares(23, 9)
    assert not taxicab.is_sum_of_j_squares(22, 9)
    value, provenance = taxicab.square_search_bound(3, 10)
    assert value == 2916 and provenance == "certified"
    threshold, ways = taxicab.five_square_tail_threshold()
    assert (threshold, ways) == (921681, 189)


def test_searcher():
    s = taxicab.Searcher()
    out = s.taxicab(3, 2, 2, 2000)
    assert out.found and out.n == 1729

    absent = s.decide_squares(10, 3)
    assert absent.status == "proved-absent"
    assert absent.bound_used == 2916

    cert = s.certify_tail_nonexistence(3, 10)
    assert cert is not None and "tail-row: 12" in cert
    assert s.certify_tail_increment(2, 2, 2) is None

    seq = s.membership_sequence(2, 5, j_limit=25)
    assert list(seq.complement) == [3]
    assert list(seq.undetermined) == []

    col = s.classify_column(2, 3, j_limit=20)
    assert col.verdict == "eventual-absence" and col.onset_j == 10
    assert "tail-row: 12" in col.certificate_text


def test_grid_and_fit():
    s = taxicab.Searcher()
    grid = taxicab.build_grid(s, 2, (9, 10), (3, 3))
    status, n, provenance = grid.cell(9, 3)
    assert (status, n, provenance) == ("exists", 49, "certified")
    assert grid.cell(10, 3)[0] == "absent"

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "grid.pbm")
        grid.write_pbm(path)
        with open(path) as f:
            assert f.read() == "P1\n2 1\n0 1\n"

    a, b, residual = taxicab.fit_root_affine(
        [(x, 2.0 * x ** 0.125 - 1.0) for x in range(1, 20)], 8
    )
    assert abs(a - 2.0) < 1e-9 and abs(b + 1.0) < 1e-9 and residual < 1e-9


def main():
    test_counts()
    test_representations()
    test_squares()
    test_searcher()
    test_grid_and_fit()
    print("python smoke tests passed")


if __name__ == "__main__":
    main()
