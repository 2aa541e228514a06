"""A tiny assembler with symbolic labels for writing library programs."""

from __future__ import annotations

from .builtins import BUILTIN_IDS
from .machine import CALL, COPY, DEC, EXEC, HALT, INC, JMP, SET, Program, encode


class Asm:
    def __init__(self, arity: int):
        self.arity = arity
        self.code: list[tuple] = []
        self.labels: dict[str, int] = {}

    def label(self, name: str) -> "Asm":
        if name in self.labels:
            raise ValueError(f"label {name} defined twice")
        self.labels[name] = len(self.code)
        return self

    def inc(self, r):
        self.code.append((INC, r))
        return self

    def dec(self, r, target):
        self.code.append((DEC, r, target))
        return self

    def jmp(self, target):
        self.code.append((JMP, target))
        return self

    def halt(self, r):
        self.code.append((HALT, r))
        return self

    def set(self, r, c):
        self.code.append((SET, r, c))
        return self

    def copy(self, d, s):
        self.code.append((COPY, d, s))
        return self

    def call(self, d, name, *args):
        self.code.append((CALL, d, BUILTIN_IDS[name], *args))
        return self

    def exec(self, r, keep):
        self.code.append((EXEC, r, keep))
        return self

    def loop(self):
        """Diverge."""
        here = len(self.code)
        self.code.append((JMP, here))
        return self

    def build(self) -> Program:
        end = len(self.code)

        def resolve(t):
            if isinstance(t, str):
                if t == "end":
                    return end
                return self.labels[t]
            return t

        out = []
        for ins in self.code:
            if ins[0] == DEC:
                out.append((DEC, ins[1], resolve(ins[2])))
            elif ins[0] == JMP:
                out.append((JMP, resolve(ins[1])))
            else:
                out.append(ins)
        return Program(self.arity, tuple(out))

    def index(self) -> int:
        return encode(self.build())
