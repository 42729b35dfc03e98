# -*- coding: utf-8 -*-
import os
from typing import Dict, Tuple, Optional

import torch

from sidrank.checkpoint import CheckpointContainer
from sidrank.config import config
from sidrank.context import context
from sidrank.datagen import World, SessionLog, save_world, load_world, save_sessions, load_sessions, save_sids, \
    load_sids
from sidrank.errors import MissingArtifact, ConfigDigestMismatch
from sidrank.event import events
from sidrank.model import Backbone, build_backbone
from sidrank.rsp import RankHead, build_rank_head
from sidrank.tokenizer import Codebooks, SemanticId
from .settings import run_digest, model_config

MODEL_FORMAT_VERSION = 1


class ArtifactStore:
    """
    Artifacts of the output directory. What a phase saves is kept in context for following phases of the same
    command; otherwise artifacts are read back from files, and their configuration digest is checked.
    """

    def __init__(self, out: Optional[str] = None, digest: Optional[str] = None):
        self.out = out if out is not None else config.data.get("run.out")
        self.digest = digest if digest is not None else run_digest()

    def path(self, filename: str) -> str:
        """
        Path of an artifact file.
        """
        return os.path.join(self.out, filename)

    def _saved(self, kind: str, filename: str, value):
        context.artifacts[kind] = value
        events.artifact.saved(kind=kind, path=self.path(filename))

    def _require(self, filename: str, producer: str) -> str:
        path = self.path(filename)
        if not os.path.exists(path):
            raise MissingArtifact(path, producer)
        return path

    def _check(self, filename: str, digest: str):
        if digest != self.digest:
            raise ConfigDigestMismatch(self.path(filename), self.digest, digest)

    def prepare(self):
        """
        Create the output directory.
        """
        os.makedirs(self.out, exist_ok=True)

    def save_world(self, world: World):
        """
        Save the world. The world kept in context is the one read back, so float32 rounding is shared by all runs.
        """
        self.prepare()
        save_world(self.path("world.rgr"), world, self.digest)
        self._saved("world", "world.rgr", load_world(self.path("world.rgr"))[0])

    def world(self) -> World:
        """
        The synthetic world.
        """
        if "world" not in context.artifacts:
            world, container = load_world(self._require("world.rgr", "gen"))
            container.require_digest(self.digest, self.path("world.rgr"))
            context.artifacts["world"] = world
        return context.artifacts["world"]

    def save_sessions(self, sessions: SessionLog):
        """
        Save sessions.
        """
        self.prepare()
        save_sessions(self.path("sessions.tsv"), sessions, self.digest)
        self._saved("sessions", "sessions.tsv", sessions)

    def sessions(self) -> SessionLog:
        """
        Session log.
        """
        if "sessions" not in context.artifacts:
            sessions, digest = load_sessions(self._require("sessions.tsv", "gen"))
            self._check("sessions.tsv", digest)
            context.artifacts["sessions"] = sessions
        return context.artifacts["sessions"]

    def save_codebooks(self, codebooks: Codebooks) -> Codebooks:
        """
        Save codebooks and return them as read back.
        """
        self.prepare()
        codebooks.to_container({"config_digest": self.digest, "kind": "codebooks"}).save(self.path("codebooks.rgr"))
        saved = Codebooks.from_container(CheckpointContainer.load(self.path("codebooks.rgr"), ("codebook.",)))
        self._saved("codebooks", "codebooks.rgr", saved)
        return saved

    def codebooks(self) -> Codebooks:
        """
        Trained codebooks.
        """
        if "codebooks" not in context.artifacts:
            container = CheckpointContainer.load(self._require("codebooks.rgr", "tokenize"), ("codebook.",))
            container.require_digest(self.digest, self.path("codebooks.rgr"))
            context.artifacts["codebooks"] = Codebooks.from_container(container)
        return context.artifacts["codebooks"]

    def save_sids(self, sids: Dict[int, SemanticId]):
        """
        Save item semantic ids.
        """
        self.prepare()
        save_sids(self.path("sids.tsv"), sids, self.digest)
        self._saved("sids", "sids.tsv", sids)

    def sids(self) -> Dict[int, SemanticId]:
        """
        Semantic id of every item.
        """
        if "sids" not in context.artifacts:
            sids, digest = load_sids(self._require("sids.tsv", "tokenize"))
            self._check("sids.tsv", digest)
            context.artifacts["sids"] = sids
        return context.artifacts["sids"]

    def save_model(self, backbone: Backbone, head: Optional[RankHead], variant: str, steps: int):
        """
        Save the trained modules, the rank head under its own namespace when there is one.
        """
        self.prepare()
        container = CheckpointContainer(metadata={"config_digest": self.digest, "kind": "model", "variant": variant,
                                                  "steps": steps, "model_version": MODEL_FORMAT_VERSION})
        for name, tensor in backbone.state_dict().items():
            container.put("model." + name, tensor.detach().cpu().numpy())
        if head is not None:
            for name, tensor in head.state_dict().items():
                container.put("rank_head." + name, tensor.detach().cpu().numpy())
        container.save(self.path("model.rgr"))
        self._saved("model", "model.rgr", self._modules(container))

    def model(self) -> Tuple[Backbone, Optional[RankHead], str]:
        """
        Trained backbone, rank head (None for variants without one) and variant name.
        """
        if "model" not in context.artifacts:
            container = CheckpointContainer.load(self._require("model.rgr", "train"), ("model.", "rank_head."))
            container.require_digest(self.digest, self.path("model.rgr"))
            context.artifacts["model"] = self._modules(container)
        return context.artifacts["model"]

    @staticmethod
    def _modules(container: CheckpointContainer) -> Tuple[Backbone, Optional[RankHead], str]:
        configuration = model_config()
        backbone = build_backbone(configuration, 0)
        backbone.load_state_dict({name: torch.from_numpy(array.copy())
                                  for name, array in container.namespace("model").items()})
        head = None
        head_arrays = container.namespace("rank_head")
        if head_arrays:
            head = build_rank_head(configuration.d_model, 0)
            head.load_state_dict({name: torch.from_numpy(array.copy()) for name, array in head_arrays.items()})
        return backbone.eval(), head.eval() if head is not None else None, container.metadata.get("variant")
