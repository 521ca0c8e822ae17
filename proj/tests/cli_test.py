"""End-to-end checks of the arithterm command line.

Usage: cli_test.py <arithterm-binary> <source-dir>
"""

import ast
import json
import os
import subprocess
import sys
import tempfile
import unittest
from fractions import Fraction
from math import floor, gcd

CLI = ""
SRC = ""


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("ARITHTERM_BIT_BUDGET", None)
    if env:
        e.update(env)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=e)


def out(*args):
    r = run(*args)
    if r.returncode != 0:
        raise AssertionError(f"{args} exited {r.returncode}: {r.stderr}")
    return r.stdout


def spec_path(name):
    return os.path.join(SRC, "data", "specs", name + ".json")


def tau(n):
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def phi(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


class Appendix:
    """Exact evaluator for the appendix output format."""

    funcs = {
        "floor": lambda x: Fraction(floor(x)),
        "HW": lambda x: Fraction(bin(int(x)).count("1")),
        "irem": lambda a, b: Fraction(int(a) % int(b)) if b else a,
        "igcd": lambda a, b: Fraction(gcd(int(a), int(b))),
        "max": max,
    }

    def __init__(self, text, names):
        self.tree = ast.parse(text.strip().replace("^", "**"), mode="eval").body
        self.names = names

    def __call__(self, *values):
        self.env = dict(zip(self.names, (Fraction(v) for v in values)))
        v = self.ev(self.tree)
        assert v.denominator == 1, "non-integer result"
        return int(v)

    def ev(self, node):
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return self.env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -self.ev(node.operand)
        if isinstance(node, ast.Call):
            return self.funcs[node.func.id](*(self.ev(a) for a in node.args))
        if isinstance(node, ast.BinOp):
            a, b = self.ev(node.left), self.ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
            if isinstance(node.op, ast.Pow):
                assert b.denominator == 1 and b >= 0
                return a ** int(b)
        raise ValueError(f"unsupported node {ast.dump(node)}")


class ExitCodes(unittest.TestCase):
    def test_values(self):
        self.assertEqual(out("eval", "tau", "12"), "6\n")
        self.assertEqual(out("eval", "sigma", "6"), "12\n")
        self.assertEqual(out("eval", "inv", "3", "7"), "5\n")
        self.assertEqual(out("eval", "ord", "2", "5", "--strategy", "spec-count"), "4\n")
        self.assertEqual(out("eval", "root", "3", "27", "--strategy", "oracle"), "3\n")

    def test_usage_errors(self):
        self.assertEqual(run("eval", "inv", "4", "8").returncode, 2)
        self.assertEqual(run("eval", "tau", "1", "2").returncode, 2)
        self.assertEqual(run("eval", "tau", "x").returncode, 2)
        self.assertEqual(run("show", "nosuchfn").returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)
        self.assertEqual(run("export", "bfile", "inv", "--range", "1..3").returncode, 2)
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            f.write("{not json")
        try:
            self.assertEqual(run("compile", "--spec", f.name).returncode, 2)
        finally:
            os.unlink(f.name)

    def test_budget(self):
        r = run("eval", "sigma", "25", env={"ARITHTERM_BIT_BUDGET": "1000"})
        self.assertEqual(r.returncode, 3)
        r = run("--bit-budget", "100000000", "eval", "sigma", "25", env={"ARITHTERM_BIT_BUDGET": "1000"})
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout, "31\n")
        self.assertEqual(run("eval", "sigma", "25", env={"ARITHTERM_BIT_BUDGET": "junk"}).returncode, 2)
        self.assertEqual(run("--enum-budget", "10", "eval", "tau", "20", "--strategy", "spec-count").returncode, 3)

    def test_verify(self):
        r = run("verify", "sqrt", "--range", "1..15")
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout, "15/15 match\n")
        r = run("verify", "tau", "--range", "0..2")
        self.assertEqual(r.returncode, 5)
        self.assertEqual(r.stdout, "2/3 match\n")
        self.assertEqual(out("verify", "inv", "--range", "1..9,2..10", "--in-domain"), "31/31 match\n")

    def test_report(self):
        lines = out("eval", "tau", "6", "--report").splitlines()
        self.assertEqual(lines[0], "4")
        self.assertTrue(lines[1].startswith("peak_bits "))
        self.assertIn("div count.div ok", lines)


class Determinism(unittest.TestCase):
    def test_show_and_compile_repeat(self):
        for args in (["show", "tau", "--metrics"], ["show", "log", "--format", "latex"],
                     ["compile", "--spec", spec_path("inv")]):
            self.assertEqual(out(*args), out(*args))

    def test_show_matches_compile(self):
        self.assertEqual(out("show", "tau"), out("compile", "--spec", spec_path("tau")))

    def test_golden(self):
        with open(os.path.join(SRC, "tests", "golden", "tau_canonical.txt")) as f:
            self.assertEqual(out("show", "tau", "--format", "canonical", "--metrics"), f.read())

    def test_parallel_verify(self):
        with tempfile.TemporaryDirectory() as d:
            a, b = os.path.join(d, "a.csv"), os.path.join(d, "b.csv")
            out("verify", "sigma", "--range", "1..16", "--out", a)
            out("verify", "sigma", "--range", "1..16", "--out", b, "--parallel", "4")
            with open(a) as fa, open(b) as fb:
                ta, tb = fa.read(), fb.read()
            self.assertEqual(ta, tb)
            self.assertTrue(ta.startswith("args,expected,got,match,peak_bits\n1,1,1,1,"))
            self.assertEqual(len(ta.splitlines()), 17)


class Formats(unittest.TestCase):
    def test_appendix_tau(self):
        f = Appendix(out("show", "tau", "--format", "appendix"), ["n"])
        for n in range(1, 11):
            self.assertEqual(f(n), tau(n), n)

    def test_compiled_phi(self):
        f = Appendix(out("compile", "--spec", spec_path("phi"), "--format", "appendix"), ["n"])
        self.assertEqual(f(10), 4)
        for n in range(2, 9):
            self.assertEqual(f(n), phi(n), n)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as d:
            p = os.path.join(d, "t.txt")
            self.assertEqual(out("show", "sqrt", "--out", p), "")
            with open(p) as f:
                self.assertEqual(f.read(), out("show", "sqrt"))


class Export(unittest.TestCase):
    def test_hw_bfile(self):
        lines = out("export", "bfile", "hw", "--range", "0..64").splitlines()
        self.assertEqual(len(lines), 65)
        for n, line in enumerate(lines):
            self.assertEqual(line, f"{n} {bin(n).count('1')}")

    def test_bench(self):
        lines = out("bench", "tau", "--range", "1..3").splitlines()
        self.assertEqual(lines[0], "args,term_ms,oracle_ms,peak_bits,nodes,error")
        self.assertEqual(len(lines), 4)
        self.assertTrue(all(line.endswith(",500,") for line in lines[1:]))


class Validation(unittest.TestCase):
    def zero_width_spec(self, d):
        with open(spec_path("tau")) as f:
            spec = json.load(f)
        spec["w"] = "0"
        p = os.path.join(d, "w0.json")
        with open(p, "w") as f:
            json.dump(spec, f)
        return p

    def test_refuses_bad_width(self):
        with tempfile.TemporaryDirectory() as d:
            p = self.zero_width_spec(d)
            r = run("compile", "--spec", p, "--validate-w", "1..5")
            self.assertEqual(r.returncode, 5)
            self.assertEqual(r.stdout, "")
            self.assertIn("refusing", r.stderr)
            self.assertEqual(run("compile", "--spec", p, "--validate-w", "1..5", "--force").returncode, 0)

    def test_accepts_good_width(self):
        r = run("compile", "--spec", spec_path("tau"), "--validate-w", "1..6")
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout, out("show", "tau"))


if __name__ == "__main__":
    CLI, SRC = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
