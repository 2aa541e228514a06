"""A register machine, its Goedel numbering, and fuel-bounded execution.

Instructions (``r`` registers, ``t`` instruction targets, ``c`` constants)::

    inc r            r += 1
    dec r t          if r == 0 jump to t, else r -= 1
    jmp t
    halt r           stop with the value of r
    set r c          r := c
    copy r s         r := s
    call r f a...    r := builtin f applied to registers a...
    exec r k         continue as program decode(r), keeping registers 0..k-1

Running off the end halts with the value of register 0. Inputs arrive in
registers 0..arity-1, everything else starts at 0. ``exec`` is the
universal machine as a single step; ``call eval`` runs another program
under an explicit step budget, and those inner steps are charged to the
caller, so evaluation never uses more than its fuel.

An index is the serialized program read as a big-endian integer. Every
natural number is an index: bytes that do not parse as a program decode to
:data:`DIVERGE`, which loops forever.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

INC, DEC, JMP, HALT, SET, COPY, CALL, EXEC = range(8)
OPNAMES = ("inc", "dec", "jmp", "halt", "set", "copy", "call", "exec")
_MARK = b"\x01"


class MachineError(ValueError):
    pass


@dataclass(frozen=True)
class Halted:
    value: int


@dataclass(frozen=True)
class OutOfFuel:
    pass


OUT_OF_FUEL = OutOfFuel()
Outcome = Union[Halted, OutOfFuel]


@dataclass(frozen=True)
class Program:
    arity: int
    code: tuple[tuple[int, ...], ...]
    nregs: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.arity < 0:
            raise MachineError("negative arity")
        from .builtins import BUILTINS

        n = len(self.code)
        for pc, ins in enumerate(self.code):
            op = ins[0]
            if op in (DEC, JMP) and not 0 <= ins[-1] <= n:
                raise MachineError(f"instruction {pc}: jump target {ins[-1]} outside 0..{n}")
            if op == CALL:
                if not 0 <= ins[2] < len(BUILTINS):
                    raise MachineError(f"instruction {pc}: unknown builtin {ins[2]}")
                if len(ins) - 3 != BUILTINS[ins[2]].arity:
                    raise MachineError(f"instruction {pc}: {BUILTINS[ins[2]].name} takes {BUILTINS[ins[2]].arity} arguments")
            if op > EXEC or any(x < 0 for x in ins):
                raise MachineError(f"instruction {pc}: malformed {ins}")
        object.__setattr__(self, "nregs", self._count_registers())

    def _count_registers(self) -> int:
        regs = [self.arity]
        for ins in self.code:
            op = ins[0]
            if op in (INC, HALT, EXEC):
                regs.append(ins[1] + 1)
            elif op == DEC:
                regs.append(ins[1] + 1)
            elif op == SET:
                regs.append(ins[1] + 1)
            elif op == COPY:
                regs.append(max(ins[1], ins[2]) + 1)
            elif op == CALL:
                regs.append(max((ins[1],) + ins[3:]) + 1)
            if op == EXEC:
                regs.append(ins[2])
        return max(regs)

    def to_text(self) -> str:
        from .builtins import BUILTINS

        lines = [f"arity {self.arity}"]
        for ins in self.code:
            op = ins[0]
            if op == INC or op == HALT:
                lines.append(f"{OPNAMES[op]} r{ins[1]}")
            elif op == DEC:
                lines.append(f"dec r{ins[1]} {ins[2]}")
            elif op == JMP:
                lines.append(f"jmp {ins[1]}")
            elif op == SET:
                lines.append(f"set r{ins[1]} {ins[2]}")
            elif op == COPY:
                lines.append(f"copy r{ins[1]} r{ins[2]}")
            elif op == CALL:
                args = " ".join(f"r{a}" for a in ins[3:])
                lines.append(f"call r{ins[1]} {BUILTINS[ins[2]].name} {args}".rstrip())
            else:
                lines.append(f"exec r{ins[1]} {ins[2]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"arity": self.arity, "instructions": self.to_text().splitlines()[1:]}


DIVERGE = Program(1, ((JMP, 0),))


def _reg(tok: str, lineno: int) -> int:
    if not tok.startswith("r") or not tok[1:].isdigit():
        raise MachineError(f"line {lineno}: expected register, got {tok!r}")
    return int(tok[1:])


def _num(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise MachineError(f"line {lineno}: expected number, got {tok!r}")
    return int(tok)


def parse_program(text: str) -> Program:
    """Read the one-instruction-per-line format written by :meth:`Program.to_text`.

    The first non-comment line may be ``arity N`` (default 1); ``#`` starts a comment.
    """
    from .builtins import BUILTIN_IDS

    arity = 1
    code: list[tuple[int, ...]] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        name = toks[0].lower()
        if name == "arity" and not seen_header and not code:
            arity = _num(toks[1], lineno)
            seen_header = True
            continue
        seen_header = True
        expect = {"inc": 2, "halt": 2, "dec": 3, "jmp": 2, "set": 3, "copy": 3, "exec": 3}
        if name in expect and len(toks) != expect[name]:
            raise MachineError(f"line {lineno}: {name} takes {expect[name] - 1} operands")
        if name in ("inc", "halt"):
            code.append((OPNAMES.index(name), _reg(toks[1], lineno)))
        elif name == "dec":
            code.append((DEC, _reg(toks[1], lineno), _num(toks[2], lineno)))
        elif name == "jmp":
            code.append((JMP, _num(toks[1], lineno)))
        elif name == "set":
            code.append((SET, _reg(toks[1], lineno), _num(toks[2], lineno)))
        elif name == "copy":
            code.append((COPY, _reg(toks[1], lineno), _reg(toks[2], lineno)))
        elif name == "exec":
            code.append((EXEC, _reg(toks[1], lineno), _num(toks[2], lineno)))
        elif name == "call":
            if len(toks) < 3 or toks[2] not in BUILTIN_IDS:
                raise MachineError(f"line {lineno}: unknown builtin in {line!r}")
            code.append((CALL, _reg(toks[1], lineno), BUILTIN_IDS[toks[2]]) + tuple(_reg(t, lineno) for t in toks[3:]))
        else:
            raise MachineError(f"line {lineno}: unknown instruction {name!r}")
    return Program(arity, tuple(code))


def program_from_json(data: dict) -> Program:
    if "index" in data:
        return decode(int(data["index"]))
    header = f"arity {data.get('arity', 1)}\n"
    return parse_program(header + "\n".join(data["instructions"]))


# -- numbering -------------------------------------------------------------

def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        byte = n & 0x7F
        n >>= 7
        if n:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_varint(buf: bytes, pos: int) -> tuple[int, int]:
    n = shift = 0
    while True:
        if pos >= len(buf):
            raise MachineError("truncated varint")
        byte = buf[pos]
        pos += 1
        n |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            if byte == 0 and shift > 7:
                raise MachineError("non-canonical varint")
            return n, pos


def encode(p: Program) -> int:
    body = bytearray(_varint(p.arity))
    body += _varint(len(p.code))
    for ins in p.code:
        body.append(ins[0])
        for x in ins[1:]:
            body += _varint(x)
    return int.from_bytes(_MARK + bytes(body), "big")


def _operand_count(op: int, buf: bytes, pos: int) -> int:
    from .builtins import BUILTINS

    if op in (INC, HALT, JMP):
        return 1
    if op in (DEC, SET, COPY, EXEC):
        return 2
    if op == CALL:
        _, after_dest = _read_varint(buf, pos)
        fid, _ = _read_varint(buf, after_dest)
        if fid >= len(BUILTINS):
            raise MachineError("unknown builtin")
        return 2 + BUILTINS[fid].arity
    raise MachineError(f"bad opcode {op}")


@lru_cache(maxsize=1 << 17)
def decode(index: int) -> Program:
    """Total decoding: malformed numbers give :data:`DIVERGE`."""
    try:
        return _decode(index)
    except MachineError:
        return DIVERGE


def is_well_formed(index: int) -> bool:
    try:
        _decode(index)
    except MachineError:
        return False
    return True


def _decode(index: int) -> Program:
    if index <= 0:
        raise MachineError("no marker")
    buf = index.to_bytes((index.bit_length() + 7) // 8, "big")
    if not buf.startswith(_MARK):
        raise MachineError("no marker")
    pos = 1
    arity, pos = _read_varint(buf, pos)
    count, pos = _read_varint(buf, pos)
    if count > len(buf):
        raise MachineError("instruction count exceeds length")
    code = []
    for _ in range(count):
        if pos >= len(buf):
            raise MachineError("truncated program")
        op = buf[pos]
        pos += 1
        operands = []
        for _ in range(_operand_count(op, buf, pos)):
            x, pos = _read_varint(buf, pos)
            operands.append(x)
        code.append((op, *operands))
    if pos != len(buf):
        raise MachineError("trailing bytes")
    return Program(arity, tuple(code))


# -- execution -------------------------------------------------------------

def run(p: Program | int, args: Sequence[int], fuel: int) -> Outcome:
    """Run ``p`` on ``args`` for at most ``fuel`` steps."""
    prog = decode(p) if isinstance(p, int) else p
    if len(args) != prog.arity:
        raise MachineError(f"program has arity {prog.arity}, got {len(args)} arguments")
    if any(a < 0 for a in args):
        raise MachineError("arguments must be natural numbers")
    value, _ = execute(prog, list(args), fuel)
    return OUT_OF_FUEL if value is None else Halted(value)


def run_index(index: int, args: Sequence[int], fuel: int) -> Outcome:
    """Like :func:`run` but ignores the declared arity (the convention for W_i)."""
    value, _ = execute(decode(index), list(args), fuel)
    return OUT_OF_FUEL if value is None else Halted(value)


def halting_time(index: int, args: Sequence[int], fuel: int) -> int | None:
    value, used = execute(decode(index), list(args), fuel)
    return None if value is None else used


_TABLE = None


def execute(prog: Program, inputs: list[int], budget: int) -> tuple[int | None, int]:
    """Core loop. Returns (value or None when fuel ran out, steps used)."""
    global _TABLE
    if _TABLE is None:
        from .builtins import BUILTINS, EVAL_IDS
        _TABLE = (BUILTINS, EVAL_IDS)
    BUILTINS, EVAL_IDS = _TABLE
    if prog is DIVERGE:
        return None, budget
    regs = inputs + [0] * max(0, prog.nregs - len(inputs))
    code = prog.code
    n = len(code)
    pc = 0
    steps = 0
    while True:
        if pc >= n:
            return regs[0], steps
        if steps >= budget:
            return None, steps
        steps += 1
        ins = code[pc]
        op = ins[0]
        if op == DEC:
            r = ins[1]
            if regs[r] == 0:
                pc = ins[2]
            else:
                regs[r] -= 1
                pc += 1
        elif op == INC:
            regs[ins[1]] += 1
            pc += 1
        elif op == JMP:
            pc = ins[1]
        elif op == COPY:
            regs[ins[1]] = regs[ins[2]]
            pc += 1
        elif op == SET:
            regs[ins[1]] = ins[2]
            pc += 1
        elif op == HALT:
            return regs[ins[1]], steps
        elif op == CALL:
            fid = ins[2]
            args = [regs[a] for a in ins[3:]]
            if fid in EVAL_IDS:
                *call_args, limit = args
                room = budget - steps
                inner = decode(call_args[0])
                value, used = execute(inner, call_args[1:], min(limit, room))
                steps += used
                if value is None:
                    if limit > room:
                        return None, budget
                    regs[ins[1]] = 0
                else:
                    regs[ins[1]] = value + 1
            else:
                regs[ins[1]] = BUILTINS[fid].fn(*args)
            pc += 1
        else:  # EXEC
            nxt = decode(regs[ins[1]])
            keep = ins[2]
            kept = regs[:keep] + [0] * max(0, keep - len(regs))
            if nxt is DIVERGE:
                return None, budget
            regs = kept + [0] * max(0, nxt.nregs - keep)
            code = nxt.code
            n = len(code)
            pc = 0


# -- s-m-n -----------------------------------------------------------------

def smn(index: int, fixed: Sequence[int]) -> int:
    """Index of y -> phi_index(fixed ++ y)."""
    fixed = list(fixed)
    if not fixed:
        return index
    p = decode(index)
    k = len(fixed)
    rest = max(p.arity - k, 0)
    prefix: list[tuple[int, ...]] = []
    for y in reversed(range(rest)):
        prefix.append((COPY, y + k, y))
    for c, value in enumerate(fixed):
        prefix.append((SET, c, value))
    shift = len(prefix)
    body = []
    for ins in p.code:
        if ins[0] == DEC:
            body.append((DEC, ins[1], ins[2] + shift))
        elif ins[0] == JMP:
            body.append((JMP, ins[1] + shift))
        else:
            body.append(ins)
    if p is DIVERGE:
        body = [(JMP, shift)]
    return encode(Program(rest, tuple(prefix + body)))


def index_to_json(index: int) -> str:
    return json.dumps({"index": index})
