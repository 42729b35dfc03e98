# -*- coding: utf-8 -*-
from abc import ABC
from typing import Iterable, Type

from marshmallow import ValidationError

from .schema import FeatureSchema
from ..action import Action
from ..command import Command
from ..config import config
from ..errors import ConfigValidationError
from ..phase import Phase
from ..registry import RegistryObject


class Feature(RegistryObject, ABC):  # pylint:disable=abstract-method
    """
    A pipeline stage: its configuration section (named like the feature), phases, commands and actions.
    """

    @property
    def schema(self) -> Type[FeatureSchema]:
        """
        Schema of the configuration section.
        """
        return FeatureSchema

    @property
    def phases(self) -> Iterable[Phase]:
        """
        Phases owned by the feature.
        """
        return ()

    @property
    def commands(self) -> Iterable[Command]:
        """
        Commands owned by the feature.
        """
        return ()

    @property
    def actions(self) -> Iterable[Action]:
        """
        Actions owned by the feature.
        """
        return ()

    @property
    def dependencies(self) -> Iterable[str]:
        """
        Names of features configured before this one.
        """
        return ()

    @property
    def disabled(self) -> bool:
        """
        Actions of a disabled feature aren't bound.
        """
        return bool(config.data.get(self.name + '.disabled'))

    def configure(self):
        """
        Validate the configuration section, fill defaults and apply RGR_OVERRIDE_<SECTION>_<KEY> variables.
        """
        schema = self.schema()
        section = dict(config.data.get(self.name) or {})
        try:
            section = schema.dump(schema.load(section))
            section = config.apply_environ_overrides(section, config.env_override_prefix + "_" + self.name)
            config.data[self.name] = schema.dump(schema.load(section))
        except ValidationError as err:
            raise FeatureConfigurationValidationError(self, err) from err


class FeatureConfigurationValidationError(ConfigValidationError):
    """
    A configuration section doesn't match its schema. The message lists every "section.key: problem".
    """

    def __init__(self, feature: Feature, validation_error: ValidationError):
        problems = []
        for key, messages in sorted(validation_error.messages.items()):
            if isinstance(messages, dict):
                messages = [str(messages)]
            problems.extend("%s.%s: %s" % (feature.name, key, message) for message in messages)
        super().__init__('Feature "%s" has invalid configuration. %s' % (feature.name, " ".join(problems)))
        self.validation_error = validation_error
