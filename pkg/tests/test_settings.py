import pytest
import yaml

from dyerkit.settings import DEFAULT_SETTINGS, Settings, SettingsError


@pytest.fixture
def settings_path(tmp_path):
    return tmp_path / "settings.yml"


def test_defaults_without_a_file(settings_path):
    assert Settings(settings_path).settings == DEFAULT_SETTINGS
    assert not settings_path.exists()


def test_context_saves_on_exit(settings_path):
    with Settings(settings_path) as settings:
        settings.max_cosets = 5000
        settings.f_pool = [2, 4, "inf"]
    with open(settings_path, "r") as config:
        assert yaml.safe_load(config)["max_cosets"] == 5000
    assert Settings(settings_path).f_pool == [2, 4, "inf"]


@pytest.mark.parametrize(
    "name, value",
    [
        ("max_cosets", 0),
        ("max_cosets", True),
        ("max_index", 2.5),
        ("edge_prob", 1.5),
        ("f_pool", []),
        ("m_pool", [1, 2]),
        ("m_pool", [2, "inf"]),
        ("f_pool", ["infinity"]),
        ("logspath", 3),
    ],
)
def test_out_of_bounds_values_raise(settings_path, name, value):
    settings = Settings(settings_path)
    with pytest.raises(SettingsError):
        setattr(settings, name, value)


def test_unknown_and_malformed_files_are_ignored(settings_path):
    settings_path.write_text("max_index: 12\ncolour: blue\n", encoding="utf-8")
    settings = Settings(settings_path)
    assert settings.max_index == 12 and not hasattr(settings, "colour")

    settings_path.write_text("max_index: [12\n", encoding="utf-8")
    assert Settings(settings_path).max_index == DEFAULT_SETTINGS["max_index"]


def test_save_failure_raises(tmp_path):
    settings = Settings(tmp_path / "missing" / "settings.yml")
    with pytest.raises(SettingsError):
        settings.save()
