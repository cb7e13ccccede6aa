import json
import os
import pathlib
import subprocess

import numpy as np
import pytest

import formkit

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def diag(*d):
    return np.diag(np.array(d, dtype=complex))


def test_lower_bound_and_representing_map():
    t = formkit.HermitianForm.everywhere(diag(2, 5))
    assert formkit.lower_bound(t) == pytest.approx(2.0)
    q = formkit.representing_map(t, 1.0)
    assert q.minimal
    assert np.allclose(q.q.conj().T @ q.q, diag(1, 4))


def test_form_on_subspace():
    basis = np.array([[1], [0]], dtype=complex)
    t = formkit.HermitianForm(basis, np.array([[3]], dtype=complex))
    assert t.domain.dim == 1
    assert np.allclose(t.ambient_matrix(), diag(3, 0))


def test_decompose_and_recover():
    t = formkit.HermitianForm.everywhere(diag(1, 1))
    k = formkit.ContractionParam(diag(1, 0))
    d = formkit.decompose_by_contraction(t, 0.0, k)
    assert np.allclose(d.t1.ambient_matrix(), diag(0, 1))
    assert np.allclose(d.t2.ambient_matrix(), diag(1, 0))
    assert d.flags.mutually_singular
    back = formkit.recover_contraction(t, 0.0, d.t1, d.t2)
    assert np.allclose(back.matrix, k.matrix)


def test_parallel_sum():
    h1 = formkit.HermitianForm.everywhere(diag(2, 0))
    h2 = formkit.HermitianForm.everywhere(diag(2, 1))
    p = formkit.parallel_sum_forms(h1, h2)
    assert np.allclose(p.ambient_matrix(), diag(1, 0))
    assert np.allclose(formkit.parallel_sum_operators(diag(2, 0), diag(2, 1)), diag(1, 0))


def test_represent_and_resolvent():
    basis = np.array([[1], [0]], dtype=complex)
    t = formkit.HermitianForm(basis, np.array([[3]], dtype=complex))
    a = formkit.represent_form(t, 3.0)
    assert a.mul.dim == 1
    assert a.lower_bound == pytest.approx(3.0)
    assert np.allclose(formkit.resolvent(a, 1.0), diag(0.5, 0))


def test_monotone_limit_and_convergence():
    seq = formkit.FormSequence.affine(
        formkit.HermitianForm.everywhere(diag(1, 1)),
        formkit.HermitianForm.everywhere(diag(0, 1)),
        formkit.Monotonicity.nondecreasing,
    )
    lim = formkit.limit(seq)
    assert lim.domain.dim == 1
    rep = formkit.resolvent_convergence(seq, -1.0, 50)
    assert rep.errors[0] == pytest.approx(1 / 3)
    assert rep.exponent == pytest.approx(1.0, abs=0.1)
    assert rep.monotone_errors and rep.below_threshold


def test_io_round_trip():
    text = (FIXTURES / "f1.json").read_text()
    t = formkit.loads(text)
    assert isinstance(t, formkit.HermitianForm)
    assert formkit.loads(formkit.dumps(t)).same_as(t)


def test_errors_map_to_exceptions():
    with pytest.raises(formkit.ParseError):
        formkit.loads("{")
    with pytest.raises(formkit.InvariantError):
        formkit.HermitianForm.everywhere(np.array([[1, 1j], [0, 1]]))
    with pytest.raises(formkit.InvariantError):
        formkit.ContractionParam(diag(1.5))
    assert issubclass(formkit.PreconditionError, formkit.FormkitError)
    assert issubclass(formkit.FormkitError, ValueError)


def test_cli_in_process_matches_binary():
    args = ["inspect", str(FIXTURES / "f1.json")]
    code, out, err = formkit.run_cli(args)
    assert code == 0 and err == ""
    assert json.loads(out)["kind"] == "form"
    cli = os.environ.get("FORMKIT_CLI")
    if cli:
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=True)
        assert proc.stdout == out
    assert formkit.run_cli(["inspect", str(FIXTURES / "malformed.json")])[0] == 2
