import json
import os
import sys
from typing import Any, Callable, Dict, List, Optional, TextIO

# payload kinds accepted by the writers
KINDS = ("verify", "distribution", "sequence", "sums", "field-info")


def str2bool(string):
    str2val = {"True": True, "False": False}
    if string in str2val:
        return str2val[string]
    else:
        raise ValueError(f"Expected one of {set(str2val.keys())}, got {string}")


def optional_int(string):
    return None if string == "None" else int(string)


class ResultWriter:
    def __init__(self, output_path: Optional[str] = None):
        self.output_path = output_path

    def __call__(self, result: Any, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unknown payload kind {kind!r}")
        if self.output_path is None:
            self.write_result(result, file=sys.stdout, kind=kind)
            sys.stdout.flush()
            return
        directory = os.path.dirname(self.output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(self.output_path, "w", encoding="utf-8") as f:
            self.write_result(result, file=f, kind=kind)

    def write_result(self, result: Any, file: TextIO, kind: str):
        raise NotImplementedError


class WriteJSON(ResultWriter):
    def write_result(self, result: Any, file: TextIO, kind: str):
        # insertion-ordered payloads, so the output is byte-stable
        json.dump(result, file, ensure_ascii=False, indent=2)
        file.write("\n")


class WriteTable(ResultWriter):
    """
    Fixed-width text rendering. Distributions use a two-column
    values/frequencies layout with right-aligned integers.
    """

    def write_result(self, result: Any, file: TextIO, kind: str):
        render = {
            "verify": self.render_verification,
            "distribution": self.render_distribution,
            "sequence": self.render_sequence,
            "sums": self.render_sums,
            "field-info": self.render_field_info,
        }[kind]
        print(render(result), file=file, flush=True)

    @staticmethod
    def _frame(rows: List[Dict[str, Any]], columns: List[str]) -> str:
        import pandas as pd

        frame = pd.DataFrame(rows, columns=columns)
        if frame.empty:
            return "(none)"
        return frame.to_string(index=False)

    def render_entries(self, entries: List[Dict[str, int]]) -> str:
        rows = [{"values": e["value"], "frequencies": e["count"]} for e in entries]
        return self._frame(rows, ["values", "frequencies"])

    def render_distribution(self, result: Dict[str, Any]) -> str:
        header = f"k={result['k']}  l={result['l']}  d={result['d']}"
        return header + "\n" + self.render_entries(result["entries"])

    def render_sequence(self, result: Dict[str, Any]) -> str:
        return "\n".join([
            f"k={result['k']}  l={result['l']}  d={result['d']}",
            f"u (period {result['u_period']}): {result['u']}",
            f"v (period {result['v_period']}): {result['v']}",
        ])

    def render_sums(self, result: List[Dict[str, Any]]) -> str:
        columns = ["a", "b", "radical_dim_gf2", "radical_dim_gf4", "form_type", "t_direct", "t_predicted"]
        return self._frame(result, columns)

    def render_field_info(self, result: Dict[str, Any]) -> str:
        width = max(len(key) for key in result)
        return "\n".join(f"{key:<{width}}  {value}" for key, value in result.items())

    def render_verification(self, result: Dict[str, Any]) -> str:
        import pandas as pd

        empirical = {e["value"]: e["count"] for e in result["empirical"]}
        theoretical = {e["value"]: e["count"] for e in result["theoretical"]["entries"]}
        values = sorted(set(empirical) | set(theoretical))
        side_by_side = pd.DataFrame({
            "values": values,
            "observed": [empirical.get(v, 0) for v in values],
            "frequencies": [theoretical.get(v, 0) for v in values],
        }).to_string(index=False)

        checks = self._frame(
            [{"check": c["id"], "kind": c["kind"], "passed": c["passed"]} for c in result["lemma_checks"]],
            ["check", "kind", "passed"],
        )
        strata = self._frame(result["stratification"], ["value", "cube", "noncube"])
        m1, m2 = result["moment1"], result["moment2"]
        lines = [
            f"k={result['k']}  l={result['l']}  m={result['m']}  q={result['q']}  d={result['d']}  "
            f"modulus={result['modulus']}  mode={result['mode']}  shifts={result['shifts_evaluated']}",
            "",
            side_by_side,
            "",
            strata,
            "",
            f"moment 1: computed={m1['computed']}  closed form={m1['closed_form']}",
            f"moment 2: computed={m2['computed']}  closed form={m2['closed_form']}",
            "",
            checks,
        ]
        for note in result["annotations"]:
            lines += ["", f"note {note['id']}: printed {note['paper_value']}, using {note['corrected_value']} ({note['status']})"]
        lines += ["", f"match: {result['match']}"]
        return "\n".join(lines)


def get_writer(
    output_format: str, output_path: Optional[str] = None
) -> Callable[[Any, str], None]:
    writers = {
        "json": WriteJSON,
        "table": WriteTable,
    }
    if output_format not in writers:
        raise ValueError(f"Expected one of {set(writers.keys())}, got {output_format}")
    return writers[output_format](output_path)
