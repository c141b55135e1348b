import pytest

from biso.dto.channel_spec import (
    BscSpec,
    channel_from_spec,
    PairsSpec,
    RowsSpec,
    load_channel,
    load_channel_spec,
    mapper_channel,
    parse_channel_spec,
    resolve_spec_path,
)
from biso.models.channel import capacity
from biso.models.errors import SpecError


class TestParse:
    def test_bsc_decimal_string(self):
        spec = parse_channel_spec('type: bsc\np: "0.11"\n')
        assert isinstance(spec, BscSpec)
        assert spec.p == 0.11
        assert spec.label is None

    def test_rows(self):
        spec = parse_channel_spec("type: rows\nrow0: [0.9, 0.1]\nrow1: [0.1, 0.9]\n")
        assert isinstance(spec, RowsSpec)
        assert capacity(mapper_channel(spec)) == pytest.approx(
            capacity(mapper_channel(BscSpec(type="bsc", p=0.1)))
        )

    def test_pairs_with_zero(self):
        spec = parse_channel_spec("type: pairs\npairs: [[0.5, 0.2]]\nzero: 0.3\n")
        assert isinstance(spec, PairsSpec)
        ch = mapper_channel(spec)
        assert ch.zero_mass == pytest.approx(0.3)

    def test_json_is_yaml(self):
        spec = parse_channel_spec('{"type": "bec", "e": 0.25, "label": "e"}')
        assert mapper_channel(spec).label == "e"

    def test_not_a_mapping(self):
        with pytest.raises(SpecError) as err:
            parse_channel_spec("- 1\n- 2\n")
        assert err.value.line == 1

    def test_missing_type(self):
        with pytest.raises(SpecError) as err:
            parse_channel_spec("p: 0.1\n")
        assert err.value.field == "type"

    def test_unknown_type(self):
        with pytest.raises(SpecError):
            parse_channel_spec("type: awgn\np: 0.1\n")

    def test_probability_out_of_range(self):
        with pytest.raises(SpecError) as err:
            parse_channel_spec("type: bsc\n\np: 1.5\n", source="x.yaml")
        assert err.value.field == "p"
        assert err.value.line == 3
        assert str(err.value).startswith("x.yaml:3 [p]")

    def test_not_a_number(self):
        with pytest.raises(SpecError) as err:
            parse_channel_spec('type: bsc\np: "zero point one"\n')
        assert err.value.field == "p"


class TestLoad:
    def test_negative_probability(self, fixture_path):
        with pytest.raises(SpecError) as err:
            load_channel(fixture_path("negative.yaml"))
        assert err.value.field == "pairs.1.0"
        assert err.value.line == 3

    def test_not_symmetric(self, fixture_path):
        with pytest.raises(SpecError):
            load_channel(fixture_path("asymmetric.yaml"))

    def test_bad_yaml(self, fixture_path):
        with pytest.raises(SpecError) as err:
            load_channel(fixture_path("bad_yaml.yaml"))
        assert err.value.line is not None

    def test_unknown_field(self, fixture_path):
        with pytest.raises(SpecError) as err:
            load_channel_spec(fixture_path("unknown_field.yaml"))
        assert err.value.field == "erasure"

    def test_missing_file(self, fixture_path):
        with pytest.raises(SpecError):
            load_channel(fixture_path("nowhere.yaml"))

    def test_default_labels(self, fixture_path):
        assert load_channel(fixture_path("binary_rows.yaml")).label == "binary_rows"
        assert load_channel(fixture_path("bsc_0.1.yaml")).label == "BSC(0.1)"
        assert load_channel("@ternary").label == "ternary"

    def test_explicit_label(self, fixture_path):
        assert load_channel(fixture_path("bec_0.5.yaml")).label == "half-erasure"

    def test_unnamed_spec_takes_file_stem(self, fixture_path):
        spec = load_channel_spec(fixture_path("binary_rows.yaml"))
        ch = channel_from_spec(spec, fixture_path("binary_rows.yaml"))
        assert ch.label == "binary_rows"
        assert ch == load_channel(fixture_path("binary_rows.yaml"))

    def test_domain_error_names_the_file(self):
        spec = parse_channel_spec("type: pairs\npairs: [[0.5, 0.2]]\n")
        with pytest.raises(SpecError, match="bad.yaml"):
            channel_from_spec(spec, "bad.yaml")


class TestBundled:
    def test_listing(self, bundled_specs):
        specs = bundled_specs
        assert "@counterexample_a" in specs
        assert "@counterexample_b" in specs

    def test_resolve(self, fixture_path):
        assert resolve_spec_path("@ternary").endswith("ternary.yaml")
        assert resolve_spec_path(fixture_path("x.yaml")) == fixture_path("x.yaml")

    def test_counterexample_constants(self):
        a = load_channel("@counterexample_a")
        b = load_channel("@counterexample_b")
        assert sorted(a.pairs)[0] == pytest.approx((0.195, 0.195))
        assert b.pairs[1] == pytest.approx((0.0, 0.0634977))
        assert capacity(a) == pytest.approx(capacity(b), abs=1e-7)
