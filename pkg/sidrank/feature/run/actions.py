# -*- coding: utf-8 -*-
import os

import torch

from sidrank.action import Action
from sidrank.context import context
from sidrank.event import events


class ThreadsAction(Action):
    """
    Cap torch intra-op threads with RGR_THREADS.
    """

    @property
    def event_bindings(self):
        return events.main.start

    @property
    def name(self) -> str:
        return "run:threads"

    @staticmethod
    def execute(command=None):  # pylint:disable=unused-argument
        """
        Execute action
        """
        threads = os.environ.get("RGR_THREADS")
        if threads:
            torch.set_num_threads(max(1, int(threads)))
            context.log.debug("Torch threads set to %s", threads)
