"""Check records and line-oriented report rendering."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"


@dataclass(frozen=True)
class CheckRecord:
    condition: str
    status: str
    gens: str = ""
    witness: str | None = None
    note: str | None = None

    @property
    def ok(self):
        return self.status != FAIL

    @property
    def id(self):
        return f"{self.condition}[{self.gens}]" if self.gens else self.condition

    def sort_key(self):
        return (self.id, self.status, self.witness or "")

    def render(self) -> str:
        line = f"CHECK {self.id} {self.status}"
        if self.witness is not None:
            line += f" witness={self.witness}"
        return line


@dataclass
class Report:
    name: str
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, condition, status, gens="", witness=None, note=None):
        self.records.append(CheckRecord(condition, status, gens, witness, note))

    def check(self, condition, residual, gens=""):
        """Record PASS when ``residual`` is zero, otherwise FAIL with its rendering as witness."""
        if residual:
            self.add(condition, FAIL, gens, residual.render())
        else:
            self.add(condition, PASS, gens)

    def skip(self, condition, gens="", note=None):
        self.add(condition, SKIP, gens, note=note)
        if note:
            self.notes.append(f"{condition}: {note}")

    def extend(self, other: "Report"):
        self.records.extend(other.records)
        self.notes.extend(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def failures(self):
        return [r for r in self.records if r.status == FAIL]

    def of(self, condition):
        return [r for r in self.records if r.condition == condition]

    def counts(self):
        c = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.records:
            c[r.status] += 1
        return c

    def sorted_records(self):
        return sorted(self.records, key=CheckRecord.sort_key)

    def lines(self):
        return [r.render() for r in self.sorted_records()]

    def render(self, mode="lines") -> str:
        body = self.lines()
        if mode == "lines":
            return "\n".join(body)
        c = self.counts()
        head = [f"suite {self.name}"]
        head += [f"note: {n}" for n in sorted(set(self.notes))]
        tail = [f"summary: {c[PASS]} passed, {c[FAIL]} failed, {c[SKIP]} skipped"]
        return "\n".join(head + body + tail)
