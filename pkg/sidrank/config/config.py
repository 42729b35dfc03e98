# -*- coding: utf-8 -*-
import hashlib
import os
from argparse import Namespace
from pathlib import Path
from typing import Any, Iterable, List, NamedTuple, Optional, Sequence

import yaml
from dotty_dict import Dotty
from marshmallow import fields, ValidationError

from .flatten import flatten, unflatten
from .merger import config_merger
from ..errors import ConfigValidationError


class ConfigPaths(NamedTuple):
    """
    Where configuration files are searched.
    """
    project_home: str


def _candidates(directory: Path, filenames: Iterable[str], extensions: Iterable[str]) -> List[Path]:
    return [directory / ("%s.%s" % (filename, extension)) for filename in filenames for extension in extensions]


def find_project_home(env_prefix: str, filenames: Sequence[str], extensions: Sequence[str]) -> ConfigPaths:
    """
    <env_prefix>_PROJECT_HOME if set, else the nearest directory from the working directory up holding a
    configuration file, else the working directory.
    """
    explicit = os.environ.get(env_prefix + '_PROJECT_HOME')
    if explicit:
        return ConfigPaths(project_home=os.path.abspath(explicit))
    cwd = Path.cwd()
    for directory in (cwd, *cwd.parents):
        if any(candidate.exists() for candidate in _candidates(directory, filenames, extensions)):
            return ConfigPaths(project_home=str(directory))
    return ConfigPaths(project_home=str(cwd))


def _coerce(name: str, value: str, current: Any) -> Any:
    if isinstance(current, bool):
        try:
            return fields.Boolean().deserialize(value)
        except ValidationError as error:
            raise ConfigValidationError("%s: %r is not a boolean" % (name, value)) from error
    lowered = value.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    if value.isdigit():
        return int(value)
    return value


class Config:
    """
    Run configuration: sidrank.yml then sidrank.local.yml from the project home, then the --config file, deeply
    merged. Sections may be written nested or with flat "section.key" entries.
    """

    def __init__(self, paths: Optional[ConfigPaths] = None, env_prefix='RGR', env_override_prefix='RGR_OVERRIDE',
                 filenames=('sidrank', 'sidrank.local'), extensions=('yml', 'yaml'), args: Optional[Namespace] = None):
        self.env_prefix = env_prefix
        self.env_override_prefix = env_override_prefix
        self.filenames = filenames
        self.extensions = extensions
        self.paths = paths or find_project_home(env_prefix, filenames, extensions)
        self.args = args or Namespace()
        self.data = Dotty({})

    def reset(self):
        """
        Forget data and arguments, keeping the project home.
        """
        self.__init__(paths=self.paths)

    def clear(self):
        """
        Forget data.
        """
        self.data.clear()

    @property
    def files(self) -> List[Path]:
        """
        Configuration files by increasing priority, existing or not.
        """
        files = _candidates(Path(self.paths.project_home), self.filenames, self.extensions)
        extra = getattr(self.args, 'config', None)
        if extra:
            files.append(Path(extra).absolute())
        return files

    def load(self):
        """
        Read and merge existing configuration files, then apply environment overrides.
        """
        data = {}
        for file in self.files:
            if file.exists():
                with file.open('rb') as stream:
                    data = config_merger.merge(data, unflatten(yaml.safe_load(stream) or {}))
        self.data = Dotty(self.apply_environ_overrides(data))

    def apply_environ_overrides(self, data: Any, prefix: Optional[str] = None) -> Any:
        """
        Replace values with <prefix>_<SECTION>_<KEY> environment variables. Booleans and integers are parsed, other
        values are kept as strings for schemas to parse. A boolean value only accepts a boolean override.
        Keys missing from the files are overridden once schema defaults are filled in.
        """
        prefix = (prefix or self.env_override_prefix).upper()
        value = os.environ.get(prefix)
        if value:
            return _coerce(prefix, value, data)
        if isinstance(data, dict):
            for name in list(data):
                data[name] = self.apply_environ_overrides(data[name], "%s_%s" % (prefix, name))
        return data

    def flat(self, data=None) -> dict:
        """
        Configuration as "section.key" entries, lists of values kept whole.
        """
        return flatten(self.data.to_dict() if data is None else data, keep_primitive_list=True)

    def digest(self, data=None) -> str:
        """
        Short sha256 of the sorted "key=value" lines. It's embedded in artifacts to detect configuration drifts.
        """
        lines = "\n".join("%s=%s" % item for item in sorted(self.flat(data).items()))
        return hashlib.sha256(lines.encode("utf-8")).hexdigest()[:16]
