import configparser
import logging
import re
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from config.constants import (
    DEFAULT_AOA_DEG,
    DEFAULT_E,
    DEFAULT_R,
    DEFAULT_RAS_DEG,
    DEFAULT_SNR_DB,
    DEFAULT_SPACING,
    DEFAULT_T,
)
from config.settings import Config
from models.correlation import CorrelationSpec
from models.errors import ConfigurationError
from models.sweep import SweepSpec
from models.system import SystemConfig

logger = logging.getLogger(__name__)

# Nilai bawaan bila recipe tidak menyebutkan
SCENARIO_DEFAULTS = {
    't': str(DEFAULT_T),
    'r': str(DEFAULT_R),
    'e': str(DEFAULT_E),
    'snr_db': str(DEFAULT_SNR_DB),
    'd_bob': str(DEFAULT_SPACING),
    'd_eve': str(DEFAULT_SPACING),
    'aoa_bob': str(DEFAULT_AOA_DEG),
    'aoa_eve': str(DEFAULT_AOA_DEG),
    'ras_bob': str(DEFAULT_RAS_DEG),
    'ras_eve': str(DEFAULT_RAS_DEG),
    'eve_corr_known': 'true',
    's1_values': '1',
    'methods': 'exact',
}

TRUE_WORDS = ('1', 'true', 'yes', 'on')
FALSE_WORDS = ('0', 'false', 'no', 'off')


class RecipeParser:
    """Parser untuk recipe eksperimen (INI, satu section per skenario)."""

    @staticmethod
    def parse_grid(text: str) -> Tuple[float, ...]:
        """Grid dari 'start:stop:step' (stop ikut) atau daftar dipisah koma."""
        text = text.strip()
        range_match = re.fullmatch(r'\s*(-?[\d.eE+-]+)\s*:\s*(-?[\d.eE+-]+)\s*:\s*([\d.eE+-]+)\s*', text)
        try:
            if range_match:
                start, stop, step = (float(g) for g in range_match.groups())
                if step <= 0 or stop < start:
                    raise ConfigurationError(f"grid range {text!r} must have step > 0 and stop >= start")
                count = int(round((stop - start) / step)) + 1
                values = np.round(start + step * np.arange(count), 12)
                return tuple(float(v) for v in values)
            return tuple(float(item) for item in text.split(',') if item.strip())
        except ValueError:
            raise ConfigurationError(f"grid {text!r} is neither a range nor a list of numbers")

    @staticmethod
    def parse_int_list(text: str, name: str) -> Tuple[int, ...]:
        try:
            values = tuple(int(item) for item in text.split(',') if item.strip())
        except ValueError:
            raise ConfigurationError(f"{name} must be a comma separated list of integers, got {text!r}")
        if not values:
            raise ConfigurationError(f"{name} must not be empty")
        return values

    @staticmethod
    def parse_methods(text: str) -> Tuple[str, ...]:
        return tuple(item.strip() for item in text.split(',') if item.strip())

    @staticmethod
    def parse_flag(text: str, name: str) -> bool:
        lowered = text.strip().lower()
        if lowered in TRUE_WORDS:
            return True
        if lowered in FALSE_WORDS:
            return False
        raise ConfigurationError(f"{name} must be a boolean, got {text!r}")

    @staticmethod
    def load(path: str) -> configparser.ConfigParser:
        """Baca file recipe; error konfigurasi bila tidak ada atau rusak."""
        parser = configparser.ConfigParser(defaults=SCENARIO_DEFAULTS)
        try:
            with open(path, encoding='utf-8') as handle:
                parser.read_file(handle)
        except FileNotFoundError:
            raise ConfigurationError(f"recipe file not found: {path}")
        except configparser.Error as e:
            raise ConfigurationError(f"recipe file {path} is malformed: {e}")
        return parser

    @staticmethod
    def resolve(path: Optional[str], section: Optional[str],
                overrides: Optional[Mapping[str, str]] = None) -> Dict[str, str]:
        """Gabungkan [DEFAULT] < section < override CLI menjadi satu dict."""
        if path and section:
            parser = RecipeParser.load(path)
            if not parser.has_section(section):
                raise ConfigurationError(f"section [{section}] not found in {path}")
            values = dict(parser.items(section))
        else:
            values = dict(SCENARIO_DEFAULTS)
        for key, value in (overrides or {}).items():
            values[key] = str(value)
        return values

    @staticmethod
    def build_config(values: Mapping[str, str], s1: Optional[int] = None) -> SystemConfig:
        """SystemConfig dari dict recipe; s1 default = s1 pertama di s1_values."""
        try:
            t, r, e = int(values['t']), int(values['r']), int(values['e'])
            snr_db = float(values['snr_db'])
            bob = CorrelationSpec(r, float(values['d_bob']), float(values['aoa_bob']), float(values['ras_bob']))
            eve = CorrelationSpec(max(e, 1), float(values['d_eve']), float(values['aoa_eve']), float(values['ras_eve']))
        except KeyError as missing:
            raise ConfigurationError(f"recipe is missing key {missing}")
        except ValueError as e:
            raise ConfigurationError(f"recipe has a malformed number: {e}")
        if s1 is None:
            s1 = RecipeParser.parse_int_list(values['s1_values'], 's1_values')[0]
        known = RecipeParser.parse_flag(values['eve_corr_known'], 'eve_corr_known')
        return SystemConfig.from_snr_db(t, r, e, snr_db, s1, bob, eve, eve_corr_known=known)

    @staticmethod
    def build_sweep(path: str, section: str, overrides: Optional[Mapping[str, str]] = None,
                    seed: Optional[int] = None, trials: Optional[int] = None) -> SweepSpec:
        """SweepSpec untuk satu section recipe."""
        values = RecipeParser.resolve(path, section, overrides)
        for key in ('variable', 'grid'):
            if key not in values:
                raise ConfigurationError(f"section [{section}] needs a '{key}' key")
        s1_values = RecipeParser.parse_int_list(values['s1_values'], 's1_values')
        spec = SweepSpec(
            variable=values['variable'].strip(),
            grid=RecipeParser.parse_grid(values['grid']),
            s1_values=s1_values,
            base=RecipeParser.build_config(values, s1=s1_values[0]),
            trials=trials if trials is not None else int(values.get('trials', Config.DEFAULT_TRIALS)),
            seed=seed if seed is not None else int(values.get('seed', Config.DEFAULT_SEED)),
            methods=RecipeParser.parse_methods(values['methods']),
            name=section,
        )
        logger.info(f"📋 Recipe [{section}] dimuat: {spec.row_count} baris")
        return spec

    @staticmethod
    def parse_overrides(pairs) -> Dict[str, str]:
        """'key=value' dari --set menjadi dict."""
        overrides = {}
        for pair in pairs or ():
            key, sep, value = pair.partition('=')
            if not sep or not key.strip():
                raise ConfigurationError(f"--set expects key=value, got {pair!r}")
            overrides[key.strip().lower()] = value.strip()
        return overrides
