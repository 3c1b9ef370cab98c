"""PSCF: the on-disk text format for code specifications.

Line-oriented UTF-8, version 1:

    pscf 1
    n <int>
    k <int>
    kernel <arikan|ebch|rs> l=<int> m=<int>
    parent <text>            (optional label)
    channel <text>           (optional label)
    frozen <j> [= <s1> <s2> ...]

A ``frozen`` line constrains u_j to the XOR of the listed earlier symbols;
no source list means a static freeze.  Lines are sorted by frozen index and
the round trip parse(serialize(spec)) reproduces the spec bit-exactly.
"""

from __future__ import annotations

from .construct import CodeSpec
from .polarize import ConstraintSystem

_KERNEL_NAMES = {"arikan": "arikan", "ebch": "ebch", "reed-solomon": "rs"}
_KERNEL_KINDS = {"arikan": "arikan", "ebch": "ebch", "rs": "reed-solomon"}


class PscfError(ValueError):
    """Malformed PSCF document; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def serialize(spec: CodeSpec) -> str:
    lines = [
        "pscf 1",
        f"n {spec.n}",
        f"k {spec.k}",
        f"kernel {_KERNEL_NAMES[spec.kernel_kind]} l={spec.l} m={spec.m}",
    ]
    if spec.parent_label:
        lines.append(f"parent {spec.parent_label}")
    if spec.channel_label:
        lines.append(f"channel {spec.channel_label}")
    for j in spec.constraints.frozen:
        srcs = spec.constraints.rows.get(j, ())
        if srcs:
            lines.append(f"frozen {j} = " + " ".join(str(s) for s in srcs))
        else:
            lines.append(f"frozen {j}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> CodeSpec:
    header: dict[str, object] = {"parent": "", "channel": ""}
    frozen: list[int] = []
    rows: dict[int, tuple[int, ...]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "pscf":
                if parts[1:] != ["1"]:
                    raise PscfError(line_no, f"unsupported version {parts[1:]}")
                header["version"] = 1
            elif tag in ("n", "k"):
                header[tag] = int(parts[1])
            elif tag == "kernel":
                if parts[1] not in _KERNEL_KINDS:
                    raise PscfError(line_no, f"unknown kernel {parts[1]!r}")
                header["kind"] = _KERNEL_KINDS[parts[1]]
                for p in parts[2:]:
                    key, _, val = p.partition("=")
                    if key not in ("l", "m") or not val:
                        raise PscfError(line_no, f"bad kernel parameter {p!r}")
                    header[key] = int(val)
            elif tag in ("parent", "channel"):
                header[tag] = line.split(None, 1)[1] if len(parts) > 1 else ""
            elif tag == "frozen":
                j = int(parts[1])
                srcs: tuple[int, ...] = ()
                if len(parts) > 2:
                    if parts[2] != "=":
                        raise PscfError(line_no, "expected '=' after frozen index")
                    srcs = tuple(int(s) for s in parts[3:])
                    if not srcs:
                        raise PscfError(line_no, "'=' must be followed by sources")
                frozen.append(j)
                rows[j] = srcs
            else:
                raise PscfError(line_no, f"unknown directive {tag!r}")
        except PscfError:
            raise
        except (ValueError, IndexError) as exc:
            raise PscfError(line_no, f"cannot parse {line!r}: {exc}") from None
    for field in ("version", "n", "k", "kind", "l", "m"):
        if field not in header:
            raise PscfError(0, f"missing {field} header")
    try:
        cs = ConstraintSystem(n=int(header["n"]), frozen=tuple(sorted(frozen)),
                              rows=rows)
        return CodeSpec(
            n=int(header["n"]), k=int(header["k"]),
            kernel_kind=str(header["kind"]), l=int(header["l"]),
            m=int(header["m"]), constraints=cs,
            parent_label=str(header["parent"]),
            channel_label=str(header["channel"]))
    except ValueError as exc:
        raise PscfError(0, f"inconsistent specification: {exc}") from None


def save(spec: CodeSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(spec))


def load(path) -> CodeSpec:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
