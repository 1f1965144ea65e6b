"""Runs the same campaigns twice and compares report digests."""

import hashlib
import os
import subprocess
import sys
import tempfile

RUNS = [
    ["verify", "hierarchy", "--trials", "20", "--seed", "7", "--kmax", "5", "--nmax", "3"],
    ["verify", "monotonicity", "--param", "smn", "--trials", "20", "--seed", "3", "--kmax", "5", "--nmax", "3"],
    ["verify", "additivity", "--param", "an_prime", "--trials", "10", "--seed", "5"],
    ["verify", "powerset", "--nmax", "60"],
    ["search", "gmn-subadd", "--trials", "10", "--seed", "11"],
]


def digest(binary, args, workdir, tag):
    report = os.path.join(workdir, tag + ".txt")
    proc = subprocess.run([binary, *args, "-o", report], capture_output=True, check=False)
    if proc.returncode not in (0, 1, 3):
        sys.exit(f"{' '.join(args)}: exit {proc.returncode}\n{proc.stderr.decode()}")
    with open(report, "rb") as f:
        body = f.read()
    return proc.returncode, hashlib.sha256(body + proc.stdout).hexdigest()


def main():
    binary = sys.argv[1]
    failed = False
    with tempfile.TemporaryDirectory() as workdir:
        for i, args in enumerate(RUNS):
            a = digest(binary, args, workdir, f"{i}a")
            b = digest(binary, args, workdir, f"{i}b")
            status = "ok" if a == b else "MISMATCH"
            failed = failed or a != b
            print(f"{status} exit={a[0]} sha256={a[1][:16]} {' '.join(args)}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
