from pathlib import Path

import pytest

from models.errors import ConfigurationError
from services.parser import RecipeParser

RECIPES = Path(__file__).resolve().parent.parent / 'recipes' / 'scenarios.ini'


def test_parse_range_grid():
    grid = RecipeParser.parse_grid('-5:30:2.5')
    assert len(grid) == 15
    assert grid[0] == -5.0 and grid[-1] == 30.0
    assert RecipeParser.parse_grid('0.3:3.0:0.3')[2] == 0.9


def test_parse_list_grid():
    assert RecipeParser.parse_grid('1, 2,3') == (1.0, 2.0, 3.0)
    assert RecipeParser.parse_grid('7') == (7.0,)


@pytest.mark.parametrize("text", ['a:b:c', '5:1:1', '0:1:0', '1,x'])
def test_bad_grids(text):
    with pytest.raises(ConfigurationError):
        RecipeParser.parse_grid(text)


def test_parse_flags_and_lists():
    assert RecipeParser.parse_flag(' Yes', 'flag') is True
    assert RecipeParser.parse_flag('off', 'flag') is False
    with pytest.raises(ConfigurationError):
        RecipeParser.parse_flag('maybe', 'flag')
    assert RecipeParser.parse_int_list('1, 2', 's1_values') == (1, 2)
    with pytest.raises(ConfigurationError):
        RecipeParser.parse_int_list('', 's1_values')
    assert RecipeParser.parse_methods('exact, monte-carlo') == ('exact', 'monte-carlo')


def test_overrides():
    assert RecipeParser.parse_overrides(['SNR_DB = 10', 't=8']) == {'snr_db': '10', 't': '8'}
    assert RecipeParser.parse_overrides(None) == {}
    with pytest.raises(ConfigurationError):
        RecipeParser.parse_overrides(['snr_db'])


def test_defaults_without_recipe():
    config = RecipeParser.build_config(RecipeParser.resolve(None, None))
    assert (config.t, config.r, config.e, config.s1) == (6, 4, 4, 1)
    assert config.snr_db == pytest.approx(5.0)
    assert config.eve_corr_known


def test_override_beats_section():
    values = RecipeParser.resolve(str(RECIPES), 'bob_antennas', {'e': '2'})
    assert values['t'] == '5' and values['e'] == '2'


@pytest.mark.parametrize("section,variable,rows", [
    ('snr', 'snr_db', 60),
    ('snr_unknown_eve', 'snr_db', 30),
    ('bob_antennas', 'r_antennas', 14),
    ('spacing_bob', 'd_bob', 40),
    ('spacing_eve', 'd_eve', 40),
    ('aoa_bob', 'aoa_bob', 36),
    ('aoa_eve', 'aoa_eve', 36),
    ('ras_bob', 'ras_bob', 80),
    ('ras_eve', 'ras_eve', 80),
])
def test_shipped_recipes(section, variable, rows):
    spec = RecipeParser.build_sweep(str(RECIPES), section)
    assert spec.variable == variable
    assert spec.row_count == rows
    assert spec.seed == 20190417 and spec.trials == 100_000
    assert spec.name == section


def test_unknown_eve_recipe():
    spec = RecipeParser.build_sweep(str(RECIPES), 'snr_unknown_eve')
    assert not spec.base.eve_corr_known


def test_missing_file_and_section(tmp_path):
    with pytest.raises(ConfigurationError):
        RecipeParser.load(str(tmp_path / 'none.ini'))
    with pytest.raises(ConfigurationError):
        RecipeParser.resolve(str(RECIPES), 'missing_section')


def test_malformed_recipe(tmp_path):
    broken = tmp_path / 'broken.ini'
    broken.write_text('t = 6\n', encoding='utf-8')
    with pytest.raises(ConfigurationError):
        RecipeParser.load(str(broken))


def test_section_needs_variable(tmp_path):
    recipe = tmp_path / 'recipe.ini'
    recipe.write_text('[empty]\nt = 6\n', encoding='utf-8')
    with pytest.raises(ConfigurationError):
        RecipeParser.build_sweep(str(recipe), 'empty')


def test_bad_number(tmp_path):
    with pytest.raises(ConfigurationError):
        RecipeParser.build_config({**RecipeParser.resolve(None, None), 't': 'six'})
