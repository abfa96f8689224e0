import pytest

import wellprob as wp
from wellprob.config import RunConfig, apply_overrides, emit_text, parse_text

SAMPLE = """
[potential]
kind = closed_court
a = 25.0
v0 = 10.0

[constants]
hbar = 1.0
mass = 0.5

[task]
energy = 10.066
n_bins = 20
seed = 7
v0_list = 10, 6, 2

[output]
directory = out
format = csv
"""


def test_parse_basic_fields():
    cfg = parse_text(SAMPLE)
    assert cfg.potential.kind == "closed_court"
    assert cfg.potential.a == 25.0
    assert cfg.task.energy == 10.066
    assert cfg.task.seed == 7
    assert cfg.task.v0_list == (10.0, 6.0, 2.0)
    spec = cfg.spec()
    assert spec.kind is wp.PotentialKind.CLOSED_COURT
    assert spec.constants.mass == 0.5


def test_round_trip_is_idempotent():
    cfg = parse_text(SAMPLE)
    text1 = emit_text(cfg)
    cfg2 = parse_text(text1)
    assert cfg2 == cfg
    assert emit_text(cfg2) == text1


def test_unknown_section_and_key_rejected():
    with pytest.raises(wp.ConfigError):
        parse_text("[banana]\nx = 1\n")
    with pytest.raises(wp.ConfigError):
        parse_text("[task]\nenergyy = 1\n")
    with pytest.raises(wp.ConfigError):
        parse_text("[task]\nenergy = not-a-number\n")


def test_parity_and_format_validation():
    with pytest.raises(wp.ConfigError):
        parse_text("[task]\nparity = sideways\n")
    with pytest.raises(wp.ConfigError):
        parse_text("[output]\nformat = json\n")


def test_overrides():
    cfg = parse_text(SAMPLE)
    cfg2 = apply_overrides(cfg, ["potential.v0=6", "task.seed=99", "output.directory=elsewhere"])
    assert cfg2.potential.v0 == 6.0
    assert cfg2.task.seed == 99
    assert cfg2.output.directory == "elsewhere"
    assert cfg.task.seed == 7  # original untouched
    with pytest.raises(wp.ConfigError):
        apply_overrides(cfg, ["no-equals-sign"])
    with pytest.raises(wp.ConfigError):
        apply_overrides(cfg, ["task.bogus=1"])


def test_spec_requires_kind():
    with pytest.raises(wp.ConfigError):
        RunConfig().spec()


def test_spec_validation_becomes_config_error():
    cfg = apply_overrides(RunConfig(), ["potential.kind=infinite_well"])
    with pytest.raises(wp.ConfigError):
        cfg.spec()  # missing half-width a
