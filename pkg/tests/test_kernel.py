"""Both kernel backends must produce identical value columns."""

from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from trivalent import _kernel_py, kernel
from trivalent.formula import random_formula
from trivalent.semantics import DEFAULT, Mode, SemanticsConfig, compile_formula, value_column
from strategies import CONFIG_NAMES

try:
    from trivalent import _kernel as compiled
except ImportError:  # pragma: no cover - depends on the build
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")


@needs_compiled
def test_backends_agree():
    rng = random.Random(11)
    names = ("a", "b", "c", "d")
    for _ in range(400):
        f = random_formula(rng, names, rng.randint(0, 6))
        cfg = SemanticsConfig.from_name(rng.choice(CONFIG_NAMES))
        bivalent = rng.random() < 0.5
        args = (compile_formula(f, names), len(names), bivalent, cfg.and_table, cfg.or_table, cfg.cond_table)
        assert compiled.evaluate(*args) == _kernel_py.evaluate(*args)


@needs_compiled
def test_zero_atoms_and_constants():
    for code in ([1], [2], [1, 3], [1, 2, 6]):
        args = (code, 0, False, DEFAULT.and_table, DEFAULT.or_table, DEFAULT.cond_table)
        assert compiled.evaluate(*args) == _kernel_py.evaluate(*args)


def test_atom_columns():
    assert _kernel_py.atom_column(0, 2, False) == bytes([0, 0, 0, 1, 1, 1, 2, 2, 2])
    assert _kernel_py.atom_column(1, 2, False) == bytes([0, 1, 2] * 3)
    assert _kernel_py.atom_column(0, 2, True) == bytes([0, 0, 2, 2])


def test_large_column_shape():
    names = tuple(f"x{i}" for i in range(10))
    from trivalent.formula import parse

    col = value_column(parse("x0 -> x9"), names)
    assert len(col) == 3**10
    assert len(value_column(parse("x0 | x9"), names, DEFAULT, Mode.BIVALENT)) == 2**10


def test_env_var_forces_pure_python():
    out = subprocess.run(
        [sys.executable, "-c", "from trivalent import kernel; print(kernel.BACKEND)"],
        env={**os.environ, "TRIVALENT_PURE_PYTHON": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_backend_reported():
    assert kernel.BACKEND in ("cython", "python")
    if compiled is not None and not os.environ.get("TRIVALENT_PURE_PYTHON"):
        assert kernel.BACKEND == "cython"


@needs_compiled
def test_deep_right_nesting():
    # peak stack depth equals the nesting depth
    from trivalent.formula import parse

    names = ("a", "b", "c")
    f = parse(" -> (".join(["a", "b", "c"] * 10) + ")" * 29)
    for bivalent in (False, True):
        args = (compile_formula(f, names), 3, bivalent, DEFAULT.and_table, DEFAULT.or_table, DEFAULT.cond_table)
        assert compiled.evaluate(*args) == _kernel_py.evaluate(*args)
