# -*- coding: utf-8 -*-
from typing import Dict

from . import event


# pylint:disable=too-few-public-methods


class Phase:
    """
    Phase related events.
    """

    @event("phase:gen")
    def gen(self):
        """
        Generate the synthetic world and sessions.
        """

    @event("phase:tokenize")
    def tokenize(self):
        """
        Train codebooks and assign semantic ids.
        """

    @event("phase:train")
    def train(self):
        """
        Train the generative retrieval model.
        """

    @event("phase:retrieve")
    def retrieve(self):
        """
        Retrieve items for held-out users.
        """

    @event("phase:eval")
    def eval(self):
        """
        Evaluate hit rates.
        """

    @event("phase:ablate")
    def ablate(self):
        """
        Run the ablation matrix.
        """

    @event("phase:sweep")
    def sweep(self):
        """
        Run an hyperparameter sweep.
        """

    @event("phase:serve-sim")
    def serve_sim(self):
        """
        Run the serving simulation.
        """


class Train:
    """
    Training related events.
    """

    @event("train:step")
    def step(self, step: int, learning_rate: float, losses: Dict[str, float]):
        """
        When an optimizer step has been applied.
        :param step:
        :param learning_rate:
        :param losses:
        """

    @event("train:done")
    def done(self, steps: int, losses: Dict[str, float]):
        """
        When a training run is over.
        :param steps:
        :param losses: losses of the last step
        """


class Artifact:
    """
    Artifact related events.
    """

    @event("artifact:saved")
    def saved(self, kind: str, path: str):
        """
        When an artifact has been written to the output directory.
        :param kind:
        :param path:
        """


class Main:
    """
    Main related events.
    """

    @event("main:start")
    def start(self, command):
        """
        When the main command is starting.
        :param command:
        """

    @event("main:terminate")
    def terminate(self, command):
        """
        When the main command is terminating.
        :param command:
        """


phase = Phase()
train = Train()
artifact = Artifact()
main = Main()
