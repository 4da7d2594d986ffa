"""Script runner: ``koszulkit --job FILE [--out FILE] [--seed N]``.

A job script declares a ring, named ideals/sequences/polynomials and exactly
one command::

    # two planes meeting a third at the origin
    ring Q[x,y,z,w]
    ideal I = x*z, x*w, y*z, y*w
    ideal J = x - z, y - w
    serre I J
    output structured

Exit status: 0 computed or Verified, 1 Refuted or PreconditionFailed,
2 input or internal error.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from dataclasses import dataclass, field

from . import multitor as mt
from .complexes import FreeComplex, free_resolution, koszul_complex
from .errors import AlgebraError, DuplicateName, JobSyntaxError, UndeclaredName
from .modmath import INFINITE
from .ring import Field, PolyRing

COMMANDS = ("serre", "tor", "multitor", "resolve", "koszul", "verify")
VERIFY_KINDS = ("prop31", "cor32", "pullback", "torind", "main", "fuzz")

# argument kinds per command: "ideal" accepts ideal/seq names, "poly" a poly name, "int" a literal
_SIGNATURES = {
    "serre": (("ideal", "ideal"), 0),
    "tor": (("ideal", "ideal", "int"), 1),
    "multitor": (("seq", "int"), 1),
    "resolve": (("ideal", "int"), 1),
    "koszul": (("seq",), 0),
    "prop31": (("seq", "poly", "int"), 0),
    "cor32": (("seq", "poly", "int"), 0),
    "pullback": (("seq", "poly", "int"), 0),
    "torind": (("ideal", "poly"), 0),
    "main": (("seq", "poly", "int"), 0),
    "fuzz": (("int",), 1),
}

_RING = re.compile(r"^(Q|F(\d+))\[([^\]]*)\]$")
_DECL = re.compile(r"^(ideal|poly|seq)\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


@dataclass
class Job:
    ring: PolyRing
    names: dict  # name -> (kind, tuple of Poly)
    command: str
    sub: str | None
    args: tuple
    output: str = "text"
    ring_text: str = ""
    declarations: list = field(default_factory=list)  # declaration order

    def to_script(self) -> str:
        lines = [f"ring {self.ring_text or _ring_text(self.ring)}"]
        for name in self.declarations:
            kind, polys = self.names[name]
            lines.append(f"{kind} {name} = " + ", ".join(str(p) for p in polys))
        cmd = [self.command] + ([self.sub] if self.sub else []) + [str(a) for a in self.args]
        lines.append(" ".join(cmd))
        lines.append(f"output {self.output}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, Job):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.names == other.names
            and (self.command, self.sub, self.args, self.output)
            == (other.command, other.sub, other.args, other.output)
        )


def _ring_text(ring: PolyRing) -> str:
    return f"{ring.field}[{','.join(ring.variables)}]"


def _split_polys(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def parse_job(source: str) -> Job:
    ring = None
    ring_text = ""
    names, order = {}, []
    command = None
    output = "text"
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "ring":
            if ring is not None:
                raise JobSyntaxError(lineno, "ring declared twice")
            spec = line[4:].replace(" ", "")
            m = _RING.match(spec)
            if not m:
                raise JobSyntaxError(lineno, f"bad ring declaration {line!r}")
            variables = tuple(v for v in m.group(3).split(",") if v)
            try:
                fld = Field(int(m.group(2))) if m.group(2) else Field(0)
                ring = PolyRing(variables, fld)
            except ValueError as exc:
                raise JobSyntaxError(lineno, str(exc)) from None
            ring_text = spec
            continue
        if ring is None:
            raise JobSyntaxError(lineno, "the first statement must declare a ring")
        if head == "output":
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("text", "structured"):
                raise JobSyntaxError(lineno, "output must be 'text' or 'structured'")
            output = parts[1]
            continue
        m = _DECL.match(line)
        if m:
            kind, name, body = m.groups()
            if name in names:
                raise DuplicateName(f"line {lineno}: {name!r} already declared")
            try:
                polys = tuple(ring(t) for t in _split_polys(body))
            except AlgebraError as exc:
                raise JobSyntaxError(lineno, str(exc)) from None
            if kind == "poly" and len(polys) != 1:
                raise JobSyntaxError(lineno, "poly declarations take exactly one polynomial")
            names[name] = (kind, polys)
            order.append(name)
            continue
        if head in COMMANDS:
            if command is not None:
                raise JobSyntaxError(lineno, "only one command per job")
            command = _parse_command(lineno, line.split(), names)
            continue
        raise JobSyntaxError(lineno, f"unknown statement {head!r}")
    if ring is None:
        raise JobSyntaxError(1, "missing ring declaration")
    if command is None:
        raise JobSyntaxError(len(source.splitlines()) or 1, "missing command")
    cmd, sub, args = command
    return Job(ring, names, cmd, sub, args, output, ring_text, order)


def _parse_command(lineno, words, names):
    cmd, rest = words[0], words[1:]
    sub = None
    if cmd == "verify":
        if not rest or rest[0] not in VERIFY_KINDS:
            raise JobSyntaxError(lineno, f"verify needs one of {', '.join(VERIFY_KINDS)}")
        sub, rest = rest[0], rest[1:]
    kinds, optional = _SIGNATURES[sub or cmd]
    if not len(kinds) - optional <= len(rest) <= len(kinds):
        raise JobSyntaxError(lineno, f"wrong number of arguments for {' '.join(words[:2])}")
    args = []
    for kind, word in zip(kinds, rest):
        if kind == "int":
            if not word.isdigit():
                raise JobSyntaxError(lineno, f"expected a natural number, got {word!r}")
            args.append(int(word))
            continue
        if word not in names:
            raise UndeclaredName(f"line {lineno}: {word!r} is not declared")
        declared = names[word][0]
        if kind == "poly" and declared != "poly":
            raise JobSyntaxError(lineno, f"{word!r} must be a poly")
        if kind in ("ideal", "seq") and declared == "poly":
            raise JobSyntaxError(lineno, f"{word!r} must be an ideal or seq")
        args.append(word)
    return cmd, sub, tuple(args)


# running


@dataclass
class Report:
    pairs: list = field(default_factory=list)
    text: list = field(default_factory=list)
    exit_code: int = 0

    def put(self, key, value):
        self.pairs.append((key, _value(value)))

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return "".join(f"{k} = {v}\n" for k, v in self.pairs)
        return "\n".join(self.text) + "\n"


def _value(v) -> str:
    if v == INFINITE:
        return "infinite"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def _polys(job, name):
    return list(job.names[name][1])


def _complex_report(rep: Report, prefix: str, C: FreeComplex):
    rep.put(f"{prefix}.length", C.length)
    rep.put(f"{prefix}.betti", " ".join(str(r) for r in C.ranks))
    for q, d in enumerate(C.differentials, start=1):
        rep.put(f"{prefix}.q{q}.shape", f"{d.rows}x{d.cols}")
        for i, row in enumerate(d.entries):
            rep.put(f"{prefix}.q{q}.row{i}", "[" + ", ".join(str(e) for e in row) + "]")
    rep.text.append(C.to_text())


def _tor_lines(title, degrees):
    lines = []
    for q, deg in sorted(degrees.items()):
        lines.append(f"{title} {q}: dim {_value(deg.length)}, generic rank {deg.generic_rank}")
        lines.extend("  " + s for s in deg.module.describe())
    return lines


def run_job(job: Job, seed: int | None = None) -> Report:
    rep = Report()
    rep.put("job.command", job.command + (f" {job.sub}" if job.sub else ""))
    rep.put("job.ring", _ring_text(job.ring))
    rep.text.append(f"ring {_ring_text(job.ring)}")
    cmd, a = job.command, job.args
    if cmd == "serre":
        I, J = _polys(job, a[0]), _polys(job, a[1])
        tors = mt.tor_report(I, J)
        m = mt.serre_multiplicity(I, J, tors)
        for q, deg in sorted(tors.degrees.items()):
            rep.put(f"tor.q{q}.length", deg.length)
        rep.put("serre.multiplicity", m)
        rep.text.extend(_tor_lines("Tor", tors.degrees))
        rep.text.append(f"intersection multiplicity {m}")
    elif cmd == "tor":
        I, J = _polys(job, a[0]), _polys(job, a[1])
        tors = mt.tor_report(I, J, qmax=a[2] if len(a) > 2 else None, local=False)
        for q, deg in sorted(tors.degrees.items()):
            rep.put(f"tor.q{q}.zero", deg.module.is_zero())
            rep.put(f"tor.q{q}.dim", deg.length)
            rep.put(f"tor.q{q}.generic_rank", deg.generic_rank)
        rep.text.extend(_tor_lines("Tor", tors.degrees))
    elif cmd == "multitor":
        f = _polys(job, a[0])
        tors = mt.multitor_report(f, a[1] if len(a) > 1 else None)
        for q, deg in sorted(tors.degrees.items()):
            rep.put(f"multitor.q{q}.zero", deg.module.is_zero())
            rep.put(f"multitor.q{q}.dim", deg.length)
            rep.put(f"multitor.q{q}.generic_rank", deg.generic_rank)
        rep.text.extend(_tor_lines("Tor", tors.degrees))
    elif cmd == "resolve":
        I = _polys(job, a[0])
        C = free_resolution(I, a[1] if len(a) > 1 else None, ring=job.ring)
        _complex_report(rep, "resolution", C)
    elif cmd == "koszul":
        _complex_report(rep, "koszul", koszul_complex(_polys(job, a[0]), job.ring))
    else:
        report = _run_verify(job, seed)
        for k, v in report.to_pairs():
            rep.put(k, v)
        rep.text.append(report.to_text())
        rep.exit_code = 0 if report.verified else 1
    return rep


def _run_verify(job: Job, seed):
    sub, a = job.sub, job.args
    if sub == "fuzz":
        return _fuzz(job.ring, a[0] if a else 20, seed)
    if sub == "torind":
        return mt.check_tor_independence(_polys(job, a[0]), _polys(job, a[1])[0])
    f, x, q = _polys(job, a[0]), _polys(job, a[1])[0], a[2]
    fn = {
        "prop31": mt.check_prop_affine,
        "cor32": mt.check_cor_regular,
        "pullback": mt.check_pullback_square,
        "main": mt.verify_main_theorem_affine,
    }[sub]
    return fn(f, x, q)


def _fuzz(ring: PolyRing, count: int, seed):
    rng = random.Random(0 if seed is None else seed)
    gens = ring.gens
    summary = mt.VerifierReport("fuzz", f"{count} random instances over {ring}, seed {seed or 0}")

    def monomial():
        out = ring.one
        for _ in range(rng.randint(1, 2)):
            out = out * rng.choice(gens)
        return out

    for i in range(count):
        f = [monomial() + (rng.randint(-1, 1) * monomial()) for _ in range(rng.randint(1, 3))]
        f = [g for g in f if not g.is_zero()] or [gens[0]]
        x = rng.choice(gens) + rng.randint(0, 1)
        for q in range(len(f) + 1):
            r = mt.check_prop_affine(f, x, q)
            summary.add(f"instance {i} q={q}", r.verified, "" if r.verified else r.instance)
    return summary


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="koszulkit", description="Run a koszulkit job script.")
    parser.add_argument("--job", required=True, help="job script file")
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument("--seed", type=int, help="seed for 'verify fuzz'")
    args = parser.parse_args(argv)
    try:
        with open(args.job, encoding="utf-8") as fh:
            job = parse_job(fh.read())
        rep = run_job(job, args.seed)
        text = rep.render(job.output)
        code = rep.exit_code
    except Exception as exc:  # input and internal errors share exit status 2
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
