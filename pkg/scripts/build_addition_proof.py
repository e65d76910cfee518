#!/usr/bin/env python3
"""Assemble the addition theorem's proof file.

The proof derives, in one self-contained file: the binary 1-successor
theorem, the size-bounded binary-predecessor theorem and its unbounded
corollary, the size-bounded addition theorem by induction on the first
summand (following the carry-free schoolbook recurrences 2s+2w = 2(s+w),
2s+(2w+1) = 2(s+w)+1, (2s+1)+2w = 2(s+w)+1, (2s+1)+(2w+1) = (2(s+w)+1)+1),
and finally the unbounded addition theorem.

Run from the repository root; writes corpus/addition.cla4 and re-checks it.
"""

from __future__ import annotations

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

FBODY = "len(y) <= len({T}) -> ?z:(len(z) <= len({X}) + len(y) & z = {X} + y)"


def F(X: str, T: str) -> str:
    return "!y:(" + FBODY.format(X=X, T=T) + ")"


# evolved pieces of the negated antecedent copy inside an inductive step
def negF_after_y(X: str, T: str, w: str) -> str:
    return (f"len({w}) <= len({T}) & "
            f"!z:(!(len(z) <= len({X}) + len({w})) | z != {X} + {w})")


def negF_after_z(X: str, T: str, w: str, c: str) -> str:
    return (f"len({w}) <= len({T}) & "
            f"(!(len({c}) <= len({X}) + len({w})) | {c} != {X} + {w})")


def conseq_open(X: str, T: str) -> str:
    return F(X, T)


def conseq_after_y(X: str, T: str, a: str) -> str:
    return ("!(len({a}) <= len({T})) | ?z:(len(z) <= len({X}) + len({a})"
            " & z = {X} + {a})").format(X=X, T=T, a=a)


def conseq_after_z(X: str, T: str, a: str, d: str) -> str:
    return ("!(len({a}) <= len({T})) | (len({d}) <= len({X}) + len({a})"
            " & {d} = {X} + {a})").format(X=X, T=T, a=a, d=d)


B_GAME = "!x:?y:(x = y#0 U x = y#1)"
O_GAME = "!x:?y:(y = x#1)"
A8_GAME = "!x:?y:(y = x')"
A9_GAME = "!x:?y:(y = x#0)"

# fact binders use q-names so they never collide with the step proofs'
# fresh variables (s, u, a, w, c, d, e)
STEP_FACTS = {
    "left": [
        ("PL1", "all q1: all q2:(q1 = q2#0 -> len(q2) <= len(q1))"),
        ("PL2", "all q1: all q2:(q1 = q2#1 -> len(q2) <= len(q1))"),
        ("PL3", "all q1: all q2: all q3:(len(q1) <= len(q2) & len(q2) <= len(q3) -> len(q1) <= len(q3))"),
        ("PL4", "all q1: all q2: all q3:(q3 = q1 + q2 -> q3#0 = q1#0 + q2#0)"),
        ("PL5", "all q1: all q2: all q3:(q3 = q1 + q2 -> q3#1 = q1#0 + q2#1)"),
        ("PL6", "all q1: all q2: all q3:(len(q3) <= len(q1) + len(q2) -> len(q3#0) <= len(q1#0) + len(q2#0))"),
        ("PL7", "all q1: all q2: all q3:(len(q3) <= len(q1) + len(q2) -> len(q3#1) <= len(q1#0) + len(q2#1))"),
    ],
    "right": [
        ("PR1", "all q1: all q2:(q1 = q2#0 -> len(q2) <= len(q1))"),
        ("PR2", "all q1: all q2:(q1 = q2#1 -> len(q2) <= len(q1))"),
        ("PR3", "all q1: all q2: all q3:(len(q1) <= len(q2) & len(q2) <= len(q3) -> len(q1) <= len(q3))"),
        ("PR4", "all q1: all q2: all q3:(q3 = q1 + q2 -> q3#1 = q1#1 + q2#0)"),
        ("PR5", "all q1: all q2: all q3:(q3 = q1 + q2 -> (q3#1)' = q1#1 + q2#1)"),
        ("PR6", "all q1: all q2: all q3:(len(q3) <= len(q1) + len(q2) -> len(q3#1) <= len(q1#1) + len(q2#0))"),
        ("PR7", "all q1: all q2: all q3:(len(q3) <= len(q1) + len(q2) -> len((q3#1)') <= len(q1#1) + len(q2#1))"),
    ],
}


def build_step(side: str) -> tuple[str, list[str]]:
    """The inductive-step sentence and its attached proof lines."""
    succ_term = "s#0" if side == "left" else "s#1"
    x_term = "x#0" if side == "left" else "x#1"
    facts = [text for _, text in STEP_FACTS[side]]
    ante = [B_GAME, O_GAME, A9_GAME if side == "left" else A8_GAME] + facts
    ante_text = ", ".join(ante)

    sentence = f"!t:!x:({F('x', 't')} -> {F(x_term, 't')})"

    def seq(succ: str) -> str:
        return f"{ante_text} |- {succ}"

    def seq_with(slot: int, formula: str, succ: str) -> str:
        slots = list(ante)
        slots[slot] = formula
        return ", ".join(slots) + f" |- {succ}"

    goal = f"!({F('s', 'u')}) | ({conseq_open(succ_term, 'u')})"
    after_a = f"!({F('s', 'u')}) | ({conseq_after_y(succ_term, 'u', 'a')})"

    def case_lines(label0: int, bit: str) -> tuple[list[str], int]:
        """Six or eight lines handling the branch where a = w#bit."""
        slot_eq = f"a = w#{bit}"
        lines = []
        n = label0
        if side == "left":
            answered = "d = c#0" if bit == "0" else "d = c#1"
            qslot = 2 if bit == "0" else 1
            d_final = "d"
        else:
            qslot = 1  # the 1-successor resource answers both cases
            answered = "d = c#1"
            d_final = "d" if bit == "0" else "e"
        # instantiation hints: predecessor-size fact, size transitivity,
        # the carry recurrence, and its size version, at the play's values
        size_fact = 3 if bit == "0" else 4
        rec_fact, rec_size = (6, 8) if bit == "0" else (7, 9)
        seeds = (f"{size_fact}:a,w/5:w,a,u/{rec_fact}:s,w,c/{rec_size}:s,w,c")
        succ_mid = (f"({negF_after_z('s', 'u', 'w', 'c')}) | "
                    f"({conseq_after_y(succ_term, 'u', 'a')})")
        succ_done = (f"({negF_after_z('s', 'u', 'w', 'c')}) | "
                     f"({conseq_after_z(succ_term, 'u', 'a', d_final)})")
        base_slots = lambda eqs: _slots(ante, {0: eqs})

        def emit(succ, rule, prems=None, slots=None, evidence=None):
            nonlocal n
            n += 1
            slot_list = list(ante)
            for k, v in (slots or {}).items():
                slot_list[k] = v
            line = f"    {n}. {', '.join(slot_list)} |- {succ} ; {rule}"
            if prems:
                line += f" ; premises={','.join(str(p) for p in prems)}"
            if evidence:
                line += f" ; evidence={evidence}"
            lines.append(line)
            return n

        # terminal position, then backwards to the branch entry
        slots_done = {0: slot_eq, qslot: answered}
        extra = {}
        if side == "right" and bit == "1":
            # two answers: the doubled-and-one value, then its successor
            slots_done = {0: slot_eq, 1: "d = c#1", 2: "e = d'"}
        t_end = emit(succ_done, "wait", slots=slots_done, evidence=f"cert:{seeds}")
        answer_path = "s.r.r"
        t_ans = emit(succ_mid, f"ex-choose at={answer_path} t={d_final}",
                     prems=[t_end], slots=slots_done)
        if side == "right" and bit == "1":
            t_w2 = emit(succ_mid, "wait", prems=[t_ans],
                        slots={0: slot_eq, 1: "d = c#1", 2: "?y:(y = d')"})
            t_q2 = emit(succ_mid, "all-choose at=a2 t=d", prems=[t_w2],
                        slots={0: slot_eq, 1: "d = c#1"})
            t_wait_d = emit(succ_mid, "wait", prems=[t_q2],
                            slots={0: slot_eq, 1: "?y:(y = c#1)"})
            t_query = emit(succ_mid, "all-choose at=a1 t=c", prems=[t_wait_d],
                           slots={0: slot_eq})
        else:
            answered_game = "?y:(y = c#0)" if (side == "left" and bit == "0") \
                else "?y:(y = c#1)"
            t_wait_d = emit(succ_mid, "wait", prems=[t_ans],
                            slots={0: slot_eq, qslot: answered_game})
            t_query = emit(succ_mid, f"all-choose at=a{qslot} t=c",
                           prems=[t_wait_d], slots={0: slot_eq})
        succ_w = (f"({negF_after_y('s', 'u', 'w')}) | "
                  f"({conseq_after_y(succ_term, 'u', 'a')})")
        t_zwait = emit(succ_w, "wait", prems=[t_query], slots={0: slot_eq},
                       evidence=f"cert:{size_fact}:a,w/5:w,a,u")
        t_enter = emit(after_a, "ex-choose at=s.l t=w", prems=[t_zwait],
                       slots={0: slot_eq})
        return lines, t_enter

    lines: list[str] = []
    n = 0
    case0, entry0 = case_lines(n, "0")
    lines += case0
    n = entry0
    case1, entry1 = case_lines(n, "1")
    lines += case1
    n = entry1

    def emit_top(succ, rule, prems=None, slots=None):
        nonlocal n
        n += 1
        slot_list = list(ante)
        for k, v in (slots or {}).items():
            slot_list[k] = v
        line = f"    {n}. {', '.join(slot_list)} |- {succ} ; {rule}"
        if prems:
            line += f" ; premises={','.join(str(p) for p in prems)}"
        lines.append(line)
        return n

    t_split = emit_top(after_a, "wait", prems=[entry0, entry1],
                       slots={0: "a = w#0 U a = w#1"})
    t_fresh_w = emit_top(after_a, "wait", prems=[t_split],
                         slots={0: "?y:(a = y#0 U a = y#1)"})
    t_query_b = emit_top(after_a, "all-choose at=a0 t=a", prems=[t_fresh_w])
    t_a = emit_top(goal, "wait", prems=[t_query_b])
    t_x = emit_top(f"!x:({F('x', 'u')} -> {F(x_term, 'u')})", "wait",
                   prems=[t_a])
    emit_top(sentence, "wait", prems=[t_x])
    return sentence, lines


def _slots(ante, updates):
    out = list(ante)
    for k, v in updates.items():
        out[k] = v
    return out


def build() -> str:
    out = ["# Addition is computable: z = x + y, by induction on x over the",
           "# size-bounded form, using the binary predecessor of y to recurse.",
           "# Stretch corpus: authored for this project; self-contained."]

    # --- ingredient theorems ---------------------------------------------
    out.append("A8. !x:?y:(y = x') ; axiom:8")
    out.append("A9. !x:?y:(y = x#0) ; axiom:9")
    out.append("OS. !x:?y:(y = x#1) ; lc ; premises=A8,A9 ; proof={")
    out.append("""    1. t = r', r = s#0 |- t = (s#0)' ; wait
    2. t = r', r = s#0 |- ?y:(y = (s#0)') ; ex-choose at=s t=t ; premises=1
    3. ?y:(y = r'), r = s#0 |- ?y:(y = (s#0)') ; wait ; premises=2
    4. !x:?y:(y = x'), r = s#0 |- ?y:(y = (s#0)') ; all-choose at=a0 t=r ; premises=3
    5. !x:?y:(y = x'), ?y:(y = s#0) |- ?y:(y = (s#0)') ; wait ; premises=4
    6. !x:?y:(y = x'), !x:?y:(y = x#0) |- ?y:(y = (s#0)') ; all-choose at=a1 t=s ; premises=5
    7. !x:?y:(y = x'), !x:?y:(y = x#0) |- !x:?y:(y = (x#0)') ; wait ; premises=6
}""")
    pred_file = (ROOT / "corpus" / "binarypred.cla4").read_text()
    carried = [l for l in pred_file.splitlines()
               if not l.startswith("#")]
    out.extend(carried)

    # --- size-bounded addition -------------------------------------------
    out.append("PZ. all q:(len(q) <= len(0) + len(q) & 0 + q = q) ; pa:adding-to-zero")
    basis_sentence = f"!t:({F('0', 't')})"
    out.append(f"AB. {basis_sentence} ; lc ; premises=PZ ; proof={{")
    pz = "all q:(len(q) <= len(0) + len(q) & 0 + q = q)"
    out.append(f"    1. {pz} |- {conseq_after_z('0', 'u', 'a', 'a')} ; wait")
    out.append(f"    2. {pz} |- {conseq_after_y('0', 'u', 'a')} ; "
               "ex-choose at=s.r t=a ; premises=1")
    out.append(f"    3. {pz} |- {F('0', 'u')} ; wait ; premises=2")
    out.append(f"    4. {pz} |- {basis_sentence} ; wait ; premises=3")
    out.append("}")

    for side, label in (("left", "AL"), ("right", "AR")):
        for name, text in STEP_FACTS[side]:
            out.append(f"{name}. {text} ; pa:{name.lower()}")
        sentence, lines = build_step(side)
        fact_refs = ",".join(name for name, _ in STEP_FACTS[side])
        third = "A9" if side == "left" else "A8"
        out.append(f"{label}. {sentence} ; lc ; premises=VIII,OS,{third},{fact_refs} ; proof={{")
        out.extend(lines)
        out.append("}")

    bounded = f"!t:!x:({F('x', 't')})"
    out.append(f"AD. {bounded} ; ind:x basis=AB left=AL right=AR")

    # --- drop the bound ---------------------------------------------------
    out.append("PE. all q:(len(q) <= len(q)) ; pa:size-reflexive")
    a_slot = bounded
    pe = "all q:(len(q) <= len(q))"

    def fin(slot, succ, rule, prems=None):
        line = f"    {{n}}. {slot}, {pe} |- {succ} ; {rule}"
        if prems:
            line += f" ; premises={prems}"
        return line

    slot_full = a_slot
    slot_t = f"!x:({F('x', 'r')})"
    slot_x = F("s", "r")
    slot_y = "!(len(r) <= len(r)) | ?z:(len(z) <= len(s) + len(r) & z = s + r)"
    slot_z = "!(len(r) <= len(r)) | (len(c) <= len(s) + len(r) & c = s + r)"
    out.append(f"TH. !x:!y:?z:(z = x + y) ; lc ; premises=AD,PE ; proof={{")
    fin_lines = [
        f"    1. {slot_z}, {pe} |- c = s + r ; wait",
        f"    2. {slot_z}, {pe} |- ?z:(z = s + r) ; ex-choose at=s t=c ; premises=1",
        f"    3. {slot_y}, {pe} |- ?z:(z = s + r) ; wait ; premises=2",
        f"    4. {slot_x}, {pe} |- ?z:(z = s + r) ; all-choose at=a0 t=r ; premises=3",
        f"    5. {slot_t}, {pe} |- ?z:(z = s + r) ; all-choose at=a0 t=s ; premises=4",
        f"    6. {slot_full}, {pe} |- ?z:(z = s + r) ; all-choose at=a0 t=r ; premises=5",
        f"    7. {slot_full}, {pe} |- !y:?z:(z = s + y) ; wait ; premises=6",
        f"    8. {slot_full}, {pe} |- !x:!y:?z:(z = x + y) ; wait ; premises=7",
    ]
    out.extend(fin_lines)
    out.append("}")
    return "\n".join(out) + "\n"


def main():
    text = build()
    target = ROOT / "corpus" / "addition.cla4"
    target.write_text(text)
    print(f"wrote {target} ({len(text.splitlines())} lines)")

    from clarith import cla4
    from clarith.proofio import parse_cla4
    proof = parse_cla4(text)
    report = cla4.check_proof(proof)
    print(report.summary())
    for d in report.diagnostics:
        if not d.ok:
            print(f"  line {d.label}: " + "; ".join(d.messages))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
