import copy
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

import yaml


class Conf:
    """
    A singleton class for managing numerical tolerances and defaults.
    Values defined programmatically override the ones read from mzqfi.yaml.

    Examples
    --------
    ```
    from mzqfi.conf import Conf

    # loosen the Fock tail tolerance for a quick exploratory run
    Conf()["tolerances"]["tail_tolerance"] = 1e-10

    # temporarily override a tolerance
    with Conf().overridden(tolerances={"finite_difference_step": 1e-5}):
        ...
    ```
    """

    _instance = None
    _DEFAULT_CONFIG = {
        'tolerances': {
            'series_rel_tol': 1e-14,
            'series_max_terms': 512,
            'tail_tolerance': 1e-12,
            'max_cutoff': 4096,
            'initial_cutoff': 16,
            'oracle_headroom': 2,
            'unitarity': 1e-9,
            'derivative_floor': 1e-9,
            'finite_difference_step': 1e-4,
            'singular_guard': 1e-12,
            'degenerate_threshold': 1e-12,
            'qcrb_slack': 1e-9,
            'qfi_oracle_rel': 1e-8,
            'sensitivity_oracle_rel': 1e-5,
            'theta_offset': 1e-6,
            'optimum_xatol': 1e-6,
            'v_max': 20.0,
        },
        'csv': {
            'significant_digits': 12,
        },
        'plot': {
            'width_inches': 6.4,
            'height_inches': 4.8,
            'hashsalt': 'mzqfi',
        },
    }

    def __new__(cls):
        """Return the shared configuration, building it on first use."""
        if cls._instance is None:
            cls._instance = super(Conf, cls).__new__(cls)
            cls._instance._initialize()
        return cls._instance

    def _initialize(self):
        """
        Initialize the Conf instance from the defaults and mzqfi.yaml.
        """
        self._config_path = Path('mzqfi.yaml')
        self._config = copy.deepcopy(self._DEFAULT_CONFIG)
        self._load_config()

    def _load_config(self) -> None:
        """
        Merge the tolerances of mzqfi.yaml over the defaults.

        A missing or empty file leaves the defaults untouched.

        Raises
        ------
        ValueError
            If the file is not valid YAML or is not a mapping
        """
        if not self._config_path.is_file():
            return
        try:
            file_config = yaml.safe_load(self._config_path.read_text(encoding="utf-8"))
        except yaml.YAMLError as e:
            raise ValueError(f"mzqfi.yaml is not valid YAML ({self._config_path}): {e}")
        except OSError as e:
            raise ValueError(f"Cannot read {self._config_path}: {e}")
        if file_config is None:
            return
        if not isinstance(file_config, dict):
            raise ValueError(f"{self._config_path} must hold a mapping of sections")
        self._merge_config(self._config, file_config)

    def _merge_config(self, base: Dict, override: Dict, section: str = "") -> None:
        """
        Fold ``override`` into ``base`` section by section, in place.

        Only sections and keys that exist in the defaults are accepted, and
        a tolerance must stay a number.

        Raises
        ------
        ValueError
            On an unknown section or key, or a non-numeric tolerance
        """
        for key, value in override.items():
            where = f"{section}.{key}" if section else key
            if key not in base:
                raise ValueError(f"Unknown configuration entry '{where}'")
            current = base[key]
            if isinstance(current, dict):
                if not isinstance(value, dict):
                    raise ValueError(f"'{where}' must be a mapping, got {value!r}")
                self._merge_config(current, value, where)
            elif section == "tolerances":
                base[key] = self._tolerance_value(where, value)
            else:
                base[key] = value

    @staticmethod
    def _tolerance_value(where: str, value: Any) -> float:
        # YAML 1.1 reads 1e-10 (no dot) as a string
        if isinstance(value, str):
            try:
                value = float(value)
            except ValueError:
                pass
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"Tolerance '{where}' must be a number, got {value!r}")
        return value

    def tolerance(self, name: str) -> float:
        """
        Return one numerical tolerance.

        Parameters
        ----------
        name : str
            Key under ``tolerances``

        Raises
        ------
        KeyError
            If the tolerance does not exist
        """
        tolerances = self._config['tolerances']
        if name not in tolerances:
            raise KeyError(f"Unknown tolerance '{name}'")
        return tolerances[name]

    @contextmanager
    def overridden(self, **sections: Optional[Dict[str, Any]]) -> Iterator["Conf"]:
        """
        Temporarily merge overrides into the configuration.

        Parameters
        ----------
        **sections
            Top-level keys mapped to partial dictionaries, e.g.
            ``tolerances={"tail_tolerance": 1e-10}``. ``None`` values are skipped.
        """
        saved = copy.deepcopy(self._config)
        try:
            self._merge_config(self._config, {k: v for k, v in sections.items() if v})
            yield self
        finally:
            self._config = saved

    def reset(self) -> None:
        """Drop programmatic changes and reload defaults and mzqfi.yaml."""
        self._initialize()

    def __getitem__(self, key: str) -> Any:
        return self._config[key]

    def __setitem__(self, key: str, value: Any) -> None:
        self._config[key] = value
