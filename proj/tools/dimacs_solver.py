#!/usr/bin/env python3
"""Solve a DIMACS CNF file with CaDiCaL (python-sat) and print competition-style output."""
import sys

from pysat.formula import CNF
from pysat.solvers import Cadical153


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: dimacs_solver.py FILE.cnf", file=sys.stderr)
        return 1
    cnf = CNF(from_file=sys.argv[1])
    with Cadical153(bootstrap_with=cnf.clauses) as solver:
        if solver.solve():
            print("s SATISFIABLE")
            print("v " + " ".join(str(x) for x in solver.get_model()) + " 0")
            return 10
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())
