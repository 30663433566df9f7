"""Named example machines, stored as TRN v1 text.

Letters are 0-based throughout. Where a source drawing is ambiguous or
internally inconsistent the note on the entry says which reading is used.
"""
from dataclasses import dataclass, field

from .errors import UnknownName
from .transducer import Transducer, identity, parse_trn, serialize

_TRN = {
    "EX1_C": """\
alphabet: 3
states: q0 q1 q2
q0: 0|1->q0 1|2->q1 2|0->q2
q1: 0|0->q0 1|2->q1 2|1->q2
q2: 0|2->q1 1|1->q0 2|0->q2
""",
    "ORD2_B2": """\
alphabet: 3
states: q0 q1
q0: 0|0->q0 1|1->q0 2|2->q1
q1: 0|1->q0 1|0->q0 2|2->q1
""",
    "M_NOTCONJ": """\
alphabet: 3
states: q0 q1 q2
q0: 0|2->q0 1|0->q1 2|1->q2
q1: 0|2->q0 1|1->q1 2|0->q1
q2: 0|2->q0 1|0->q1 2|1->q1
""",
    "B_WITNESS": """\
alphabet: 3
states: q0 q1
q0: 0|1->q0 1|2->q0 2|0->q1
q1: 0|2->q0 1|1->q0 2|0->q1
""",
    # drawn on letters 1,2,3; relabelled 1->0, 2->1, 3->2
    "A4_NOCIRCUIT": """\
alphabet: 3
states: q1 q2 q3 q4
q1: 0|1->q1 1|2->q2 2|0->q4
q2: 0|1->q1 1|2->q3 2|0->q4
q3: 0|0->q1 1|2->q3 2|1->q4
q4: 0|2->q2 1|1->q1 2|0->q4
""",
    "H5_FINITE_SPLIT": """\
alphabet: 5
states: q1 q2 q3 q4 q5
q1: 0|4->q4 1|0->q1 2|2->q5 3|3->q3 4|1->q2
q2: 0|0->q1 1|4->q4 2|3->q3 3|2->q5 4|1->q2
q3: 0|1->q1 1|3->q4 2|2->q3 3|4->q5 4|0->q2
q4: 0|4->q4 1|1->q1 2|3->q5 3|2->q3 4|0->q2
q5: 0|4->q4 1|1->q1 2|2->q3 3|3->q5 4|0->q2
""",
    # transitions of state a follow the binary transition tree, not the drawing
    "G_H3": """\
alphabet: 3
states: b a
b: 0|0->b 1|2->a 2|1->b
a: 0|1->b 1|2->a 2|0->b
""",
    # the drawing taken literally; a and b coincide, so this is an involution
    "G_H3_FIGURE": """\
alphabet: 3
states: b a
b: 0|0->b 1|2->a 2|1->b
a: 0|0->b 1|2->a 2|1->b
""",
    "H_H4": """\
alphabet: 4
states: a1 a2
a1: 0|1->a1 1|2->a1 2|0->a2 3|3->a2
a2: 0|2->a1 1|1->a1 2|3->a2 3|0->a2
""",
    # one edge label of the drawing corrected so that this is the shift map
    "SHIFT2": """\
alphabet: 2
states: a1 a2
a1: 0|0->a1 1|0->a2
a2: 0|1->a1 1|1->a2
""",
    "BASE_B": """\
alphabet: 4
states: q1 q2 q3
q1: 0|0->q2 1|1->q2 2|2->q1 3|3->q3
q2: 0|0->q2 1|1->q2 2|3->q1 3|2->q3
q3: 0|1->q2 1|0->q2 2|2->q1 3|3->q3
""",
    "A_H1": """\
alphabet: 1
states: p
p: 0|0->p
""",
    "BPRIME": """\
alphabet: 5
states: q1 q2 q3 p
q1: 0|0->q2 1|1->q2 2|2->q1 3|3->q3 4|4->p
q2: 0|0->q2 1|1->q2 2|3->q1 3|2->q3 4|4->p
q3: 0|1->q2 1|0->q2 2|2->q1 3|3->q3 4|4->p
p: 0|3->q2 1|0->q2 2|1->q1 3|2->q3 4|4->p
""",
    "ORD3_H3": """\
alphabet: 3
states: q0 q1 q2
q0: 0|1->q1 1|2->q0 2|0->q2
q1: 0|1->q1 1|0->q2 2|2->q0
q2: 0|2->q1 1|1->q0 2|0->q2
""",
    "ORD2_H2": """\
alphabet: 2
states: p
p: 0|1->p 1|0->p
""",
    "COMBINED_H5": """\
alphabet: 5
states: q0 q1 q2 p
q0: 0|1->q1 1|2->q0 2|0->q2 3|3->p 4|4->p
q1: 0|1->q1 1|0->q2 2|2->q0 3|3->p 4|4->p
q2: 0|2->q1 1|1->q0 2|0->q2 3|3->p 4|4->p
p: 0|0->q1 1|1->q0 2|2->q2 3|4->p 4|3->p
""",
    "CM_Z2": """\
alphabet: 2
states: 0 1
0: 0|0->0 1|1->1
1: 0|1->1 1|0->0
""",
    "CM_Z3": """\
alphabet: 3
states: 0 1 2
0: 0|0->0 1|1->1 2|2->2
1: 0|1->1 1|2->2 2|0->0
2: 0|2->2 1|0->0 2|1->1
""",
    "P2_NOT_IN_P": """\
alphabet: 4
states: q0 q1 q2 q3 q4
q0: 0|3->q0 1|3->q1 2|2->q3 3|2->q1
q1: 0|1->q4 1|1->q2 2|0->q3 3|0->q1
q2: 0|1->q4 1|1->q2 2|2->q3 3|2->q1
q3: 0|3->q0 1|2->q1 2|2->q3 3|3->q1
q4: 0|3->q0 1|3->q1 2|0->q3 3|0->q1
""",
}
_TRN["ORD3_C"] = _TRN["EX1_C"]

_NOTES = {
    "EX1_C": "three-state bi-synchronizing example of order 3",
    "ORD3_C": "same machine as EX1_C, used for the order-3 computations",
    "ORD2_B2": "two-state element of order 2",
    "M_NOTCONJ": "element whose level-3 spectrum differs from its inverse's",
    "B_WITNESS": "two-state element of infinite order with a bad-pair loop",
    "A4_NOCIRCUIT": "letters relabelled from 1,2,3 to 0,1,2",
    "H5_FINITE_SPLIT": "finite order although it splits at its sync level",
    "G_H3": "a-row taken from the binary transition tree; drawing makes a and b equal",
    "G_H3_FIGURE": "literal drawing (degenerate: states a and b are equivalent)",
    "H_H4": "two-state element whose powers are all core",
    "SHIFT2": "shift map; one drawn label corrected from 1|1 to 0|1",
    "BASE_B": "four-letter element of order 4",
    "A_H1": "identity on a one-letter block",
    "BPRIME": "sync level 1 but inverse sync level 3",
    "ORD3_H3": "order 3 element on three letters",
    "ORD2_H2": "letter swap on a two-letter block",
    "COMBINED_H5": "drawn combination of ORD3_H3 and ORD2_H2; identity outputs on foreign letters",
    "CM_Z2": "Cayley machine of Z2",
    "CM_Z3": "Cayley machine of Z3",
    "P2_NOT_IN_P": "drawn element whose square is claimed to leave the class; not asserted",
}

_FACTS = {
    "EX1_C": {"sync_level": 2, "inverse_sync_level": 2, "order": 3},
    "ORD3_C": {"sync_level": 2, "order": 3},
    "ORD2_B2": {"order": 2},
    "B_WITNESS": {"sync_level": 1, "order": "infinite"},
    "A4_NOCIRCUIT": {"order": "infinite"},
    "G_H3": {"order": "infinite", "growth": "states(m) >= 2^floor(m/2)"},
    "BASE_B": {"sync_level": 1, "inverse_sync_level": 2, "order": 4},
    "BPRIME": {"sync_level": 1, "inverse_sync_level": 3},
    "COMBINED_H5": {"order": 6},
    "H_H4": {"sync_level": 1},
}


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    transducer: Transducer
    note: str = ""
    facts: dict = field(default_factory=dict)

    @property
    def trn(self) -> str:
        return serialize(self.transducer)


def names():
    return sorted(_TRN) + ["ID_<n>"]


def raw_text(name: str) -> str:
    return _TRN[name]


def example_registry(name: str) -> RegistryEntry:
    if name.startswith("ID_") and name[3:].isdigit() and int(name[3:]) >= 1:
        return RegistryEntry(name, identity(int(name[3:])), "identity", {"sync_level": 0, "order": 1})
    if name not in _TRN:
        raise UnknownName(name)
    return RegistryEntry(name, parse_trn(_TRN[name]), _NOTES.get(name, ""), dict(_FACTS.get(name, {})))


def get(name: str) -> Transducer:
    return example_registry(name).transducer
