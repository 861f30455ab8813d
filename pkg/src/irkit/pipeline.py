"""Two-stage data staging and prediction post-processing.

Staging turns ``(id, x, y)`` records into seq2seq training pairs for one of
the supported modes; post-processing maps raw model output files back to
executable programs, inverting the reversible transform and routing lossy
modes through a second-stage request file.

Per-record failures are quarantined with a reason, never dropped silently,
and never abort a batch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import scan as scan_ir
from . import sparql as sparql_ir
from . import sql as sql_ir
from .data import ExampleRecord, QuarantineEntry
from .errors import ConfigError, IrkitError

FORMALISMS = ("sparql", "sql", "scan")

BASELINE = "baseline"
RIR = "rir"
LIR_D = "lir-d"
LIR_I = "lir-i"
LIR_D_RIR = "lir-d-rir"
LIR_I_RIR = "lir-i-rir"
LIR_ORACLE = "lir-oracle"
LIR_CAT = "lir-cat"
VARIFIED = "varified"

MODES = (BASELINE, RIR, LIR_D, LIR_I, LIR_D_RIR, LIR_I_RIR, LIR_ORACLE,
         LIR_CAT, VARIFIED)
TWO_STAGE_MODES = frozenset({LIR_D, LIR_I, LIR_D_RIR, LIR_I_RIR, LIR_ORACLE})
RIR_COMPOSED_MODES = frozenset({LIR_D_RIR, LIR_I_RIR})


@dataclass(frozen=True, slots=True)
class StagePair:
    id: str
    source: str
    target: str


@dataclass(slots=True)
class PipelineConfig:
    formalism: str
    separator: str = " ; "
    rir_options: sparql_ir.RirOptions = sparql_ir.RirOptions()
    relation_dict: sparql_ir.RelationDictionary | None = None
    cat_budget: int = 512

    def __post_init__(self) -> None:
        if self.formalism not in FORMALISMS:
            raise ConfigError(f"unknown formalism {self.formalism!r}")
        if not self.separator:
            raise ConfigError("separator must be non-empty")


@dataclass(slots=True)
class PrepareResult:
    pairs: list[StagePair] = field(default_factory=list)
    quarantined: list[QuarantineEntry] = field(default_factory=list)
    n_over_budget: int = 0


@dataclass(slots=True)
class PostprocessResult:
    """Stage-1 post-processing output: exactly one of ``final`` (single-stage
    modes) or ``stage2_sources`` (two-stage modes) is populated."""

    final: list[tuple[str, str]] | None = None
    stage2_sources: list[tuple[str, str]] | None = None
    flagged: list[QuarantineEntry] = field(default_factory=list)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of "
                          + ", ".join(MODES))
    return mode


# ---------------------------------------------------------------------------
# Per-formalism transform dispatch
# ---------------------------------------------------------------------------


def _sparql_rir(record: ExampleRecord, cfg: PipelineConfig) -> str:
    q = sparql_ir.parse_sparql(record.y)
    return sparql_ir.render_rir(
        sparql_ir.sparql_to_rir(q, cfg.relation_dict, cfg.rir_options))


def _scan_rir_tokens(record: ExampleRecord) -> list[str]:
    # The bracketing transducer is driven by the command, so the source side
    # must actually denote the target actions.
    command = scan_ir.parse_command(record.x)
    tokens = scan_ir.scan_to_rir(command)
    if scan_ir.strip_brackets(tokens) != record.y.split():
        raise IrkitError("command does not interpret to the target actions")
    return tokens


def reversible_ir(record: ExampleRecord, cfg: PipelineConfig) -> str:
    """z_r as a surface string."""
    if cfg.formalism == "sparql":
        return _sparql_rir(record, cfg)
    if cfg.formalism == "sql":
        return sql_ir.sql_to_rir(sql_ir.parse_sql(record.y)).render()
    return scan_ir.render_actions(_scan_rir_tokens(record))


def lossy_ir(record: ExampleRecord, cfg: PipelineConfig) -> str:
    """z_l as a surface string."""
    if cfg.formalism == "sparql":
        return sparql_ir.sparql_to_lir(sparql_ir.parse_sparql(record.y))
    if cfg.formalism == "sql":
        return sql_ir.sql_to_lir(sql_ir.parse_sql(record.y)).render()
    actions = record.y.split()
    for tok in actions:
        if tok not in scan_ir.ACTIONS:
            raise IrkitError(f"unknown action token {tok!r}")
    return scan_ir.render_actions(scan_ir.scan_to_lir(actions))


def lossy_reversible_ir(record: ExampleRecord, cfg: PipelineConfig) -> str:
    """z_{l,r}: the reversible transform first, then the lossy one."""
    if cfg.formalism == "sparql":
        q = sparql_ir.parse_sparql(record.y)
        z = sparql_ir.sparql_to_rir(q, cfg.relation_dict, cfg.rir_options)
        return sparql_ir.sparql_to_lir(z)
    if cfg.formalism == "sql":
        rir = sql_ir.sql_to_rir(sql_ir.parse_sql(record.y))
        return sql_ir.sql_to_lir(sql_ir.parse_sql(rir.render())).render()
    return scan_ir.render_actions(
        scan_ir.scan_to_lir(_scan_rir_tokens(record)))


def invert_reversible(text: str, cfg: PipelineConfig) -> str:
    """Apply the exact inverse to a z_r surface string."""
    if cfg.formalism == "sparql":
        z = sparql_ir.parse_rir(text)
        return sparql_ir.render_sparql(
            sparql_ir.sparql_from_rir(z, cfg.relation_dict))
    if cfg.formalism == "sql":
        z = sql_ir.SqlRir(tuple(sql_ir.lex_sql(text)))
        return sql_ir.sql_from_rir(z).render()
    return scan_ir.render_actions(scan_ir.strip_brackets(text))


def lossy_of_prediction(text: str, cfg: PipelineConfig,
                        rir_form: bool) -> str:
    """Apply the lossy transform to a predicted program (or predicted z_r)."""
    if cfg.formalism == "sparql":
        if rir_form:
            return sparql_ir.sparql_to_lir(sparql_ir.parse_rir(text))
        return sparql_ir.sparql_to_lir(sparql_ir.parse_sparql(text))
    if cfg.formalism == "sql":
        q = sql_ir.parse_sql(text)
        if not rir_form:
            q = sql_ir.parse_sql(sql_ir.sql_to_rir(q).render())
        return sql_ir.sql_to_lir(q).render()
    tokens = text.split()
    if rir_form:
        scan_ir.strip_brackets(tokens)  # validates vocabulary and balance
    else:
        for tok in tokens:
            if tok not in scan_ir.ACTIONS:
                raise IrkitError(f"unknown action token {tok!r}")
    return scan_ir.render_actions(scan_ir.scan_to_lir(tokens))


# ---------------------------------------------------------------------------
# Staging
# ---------------------------------------------------------------------------


def _stage1_target(record: ExampleRecord, mode: str,
                   cfg: PipelineConfig) -> str:
    if mode in (BASELINE, LIR_I):
        return record.y
    if mode in (RIR, LIR_I_RIR):
        return reversible_ir(record, cfg)
    if mode in (LIR_D, LIR_ORACLE):
        return lossy_ir(record, cfg)
    if mode == LIR_D_RIR:
        return lossy_reversible_ir(record, cfg)
    if mode == LIR_CAT:
        return lossy_ir(record, cfg) + cfg.separator + record.y
    if mode == VARIFIED:
        if cfg.formalism != "sparql":
            raise ConfigError("the varified mode marks variables and "
                              "entities and is only defined for sparql")
        return sparql_ir.varify(sparql_ir.parse_sparql(record.y))
    raise ConfigError(f"unknown mode {mode!r}")


def _stage2_gold_ir(record: ExampleRecord, mode: str,
                    cfg: PipelineConfig) -> str:
    if mode in RIR_COMPOSED_MODES:
        return lossy_reversible_ir(record, cfg)
    return lossy_ir(record, cfg)


def _stage2_target(record: ExampleRecord, mode: str,
                   cfg: PipelineConfig) -> str:
    if mode in RIR_COMPOSED_MODES:
        return reversible_ir(record, cfg)
    return record.y


def _guard(value: str, what: str) -> str:
    if "\t" in value or "\n" in value:
        raise IrkitError(f"{what} contains a tab or newline")
    return value


def prepare_stage1(records: Sequence[ExampleRecord], mode: str,
                   cfg: PipelineConfig) -> PrepareResult:
    """Build (x, target) pairs for the first seq2seq stage."""
    check_mode(mode)
    if mode == VARIFIED and cfg.formalism != "sparql":
        raise ConfigError("the varified mode is only defined for sparql")
    result = PrepareResult()
    for record in records:
        try:
            source = _guard(record.x, "utterance")
            target = _guard(_stage1_target(record, mode, cfg), "target")
        except IrkitError as exc:
            result.quarantined.append(
                QuarantineEntry(record.id, "stage1", str(exc)))
            continue
        if mode == LIR_CAT and len(target.split()) > cfg.cat_budget:
            result.n_over_budget += 1
        result.pairs.append(StagePair(record.id, source, target))
    return result


def prepare_stage2(records: Sequence[ExampleRecord], mode: str,
                   cfg: PipelineConfig) -> PrepareResult:
    """Build (x ++ sep ++ gold z, target) pairs for the second stage."""
    check_mode(mode)
    if mode not in TWO_STAGE_MODES:
        raise ConfigError(f"mode {mode!r} has no second stage")
    result = PrepareResult()
    for record in records:
        try:
            z = _guard(_stage2_gold_ir(record, mode, cfg), "gold IR")
            target = _guard(_stage2_target(record, mode, cfg), "target")
            source = _guard(record.x, "utterance") + cfg.separator + z
        except IrkitError as exc:
            result.quarantined.append(
                QuarantineEntry(record.id, "stage2", str(exc)))
            continue
        result.pairs.append(StagePair(record.id, source, target))
    return result


# ---------------------------------------------------------------------------
# Post-processing
# ---------------------------------------------------------------------------


def _records_by_id(records: Sequence[ExampleRecord] | None,
                   needed_for: str) -> Mapping[str, ExampleRecord]:
    if records is None:
        raise ConfigError(f"{needed_for} requires the dataset records "
                          "(utterances are part of stage-2 sources)")
    return {r.id: r for r in records}


def postprocess_stage1(preds: Sequence[tuple[str, str]] | None, mode: str,
                       cfg: PipelineConfig,
                       records: Sequence[ExampleRecord] | None = None,
                       ) -> PostprocessResult:
    """Turn stage-1 model output into final programs (single-stage modes) or
    into stage-2 source lines (two-stage modes).

    Unusable predictions are flagged and excluded from the stage-2 request;
    they surface as automatic mismatches at evaluation time.
    """
    check_mode(mode)
    result = PostprocessResult()

    if mode == LIR_ORACLE:
        # Gold IR goes to stage 2; stage-1 predictions are ignored.
        by_id = _records_by_id(records, "lir-oracle post-processing")
        result.stage2_sources = []
        for record in by_id.values():
            try:
                z = _stage2_gold_ir(record, mode, cfg)
                source = record.x + cfg.separator + z
            except IrkitError as exc:
                result.flagged.append(
                    QuarantineEntry(record.id, "postprocess1", str(exc)))
                continue
            result.stage2_sources.append((record.id, source))
        return result

    if preds is None:
        raise ConfigError("stage-1 predictions are required for this mode")

    if mode in (BASELINE, RIR, LIR_CAT, VARIFIED):
        result.final = []
        for record_id, text in preds:
            try:
                if mode == RIR:
                    final = invert_reversible(text, cfg)
                elif mode == LIR_CAT:
                    _, sep, tail = text.partition(cfg.separator)
                    if not sep:
                        raise IrkitError("output has no separator to split "
                                         "the program from the IR")
                    final = tail
                elif mode == VARIFIED:
                    final = sparql_ir.strip_var_markers(text)
                else:
                    final = text
            except IrkitError as exc:
                result.flagged.append(
                    QuarantineEntry(record_id, "postprocess1", str(exc)))
                final = ""
            result.final.append((record_id, final))
        return result

    # Two-stage modes: build stage-2 sources from the predictions.
    by_id = _records_by_id(records, f"{mode} post-processing")
    result.stage2_sources = []
    for record_id, text in preds:
        record = by_id.get(record_id)
        if record is None:
            result.flagged.append(QuarantineEntry(
                record_id, "postprocess1", "prediction id not in dataset"))
            continue
        try:
            if mode in (LIR_D, LIR_D_RIR):
                z = text  # the prediction is the IR itself
            else:
                z = lossy_of_prediction(text, cfg,
                                        rir_form=mode == LIR_I_RIR)
            source = record.x + cfg.separator + z
        except IrkitError as exc:
            result.flagged.append(
                QuarantineEntry(record_id, "postprocess1", str(exc)))
            continue
        result.stage2_sources.append((record_id, source))
    return result


def finalize(stage2_preds: Sequence[tuple[str, str]], mode: str,
             cfg: PipelineConfig,
             records: Sequence[ExampleRecord] | None = None,
             ) -> tuple[list[tuple[str, str]], list[QuarantineEntry]]:
    """Map stage-2 output to final programs.

    With ``records`` given, ids missing from the predictions (dropped as
    invalid upstream) are carried through as empty, flagged rows so that
    evaluation denominators stay intact.
    """
    check_mode(mode)
    if mode not in TWO_STAGE_MODES and mode != LIR_CAT:
        raise ConfigError(f"mode {mode!r} has no second stage to finalize")
    flagged: list[QuarantineEntry] = []
    final: list[tuple[str, str]] = []
    for record_id, text in stage2_preds:
        try:
            if mode in RIR_COMPOSED_MODES:
                out = invert_reversible(text, cfg)
            elif mode == LIR_CAT:
                _, sep, tail = text.partition(cfg.separator)
                if not sep:
                    raise IrkitError("output has no separator to split the "
                                     "program from the IR")
                out = tail
            else:
                out = text
        except IrkitError as exc:
            flagged.append(QuarantineEntry(record_id, "finalize", str(exc)))
            out = ""
        final.append((record_id, out))
    if records is not None:
        have = {record_id for record_id, _ in final}
        for record in records:
            if record.id not in have:
                flagged.append(QuarantineEntry(
                    record.id, "finalize",
                    "no stage-2 prediction (dropped upstream)"))
                final.append((record.id, ""))
    return final, flagged
