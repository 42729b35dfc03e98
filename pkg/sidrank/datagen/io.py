# -*- coding: utf-8 -*-
import re
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from .sessions import Session, SessionLog
from .world import World
from ..checkpoint import CheckpointContainer
from ..errors import CheckpointFormatError
from ..tokenizer import SemanticId

SESSIONS_VERSION = 1
SESSIONS_HEADER = "# sidrank-sessions v%d digest=%s\n"
SESSIONS_COLUMNS = ["user_id", "timestamp", "tier", "item_id", "holdout"]
HISTORY_TIER = 0

_HEADER_PATTERN = re.compile(r"^# sidrank-sessions v(\d+) digest=(\S*)$")

WORLD_ARRAYS = ("items.latents", "items.features", "items.clusters", "items.subclusters", "users.latents",
                "users.drifts")


def save_world(path: str, world: World, digest: str):
    """
    Write the world as a checkpoint container.
    """
    container = CheckpointContainer({"items.latents": world.item_latents,
                                     "items.features": world.item_features,
                                     "items.clusters": world.item_clusters,
                                     "items.subclusters": world.item_subclusters,
                                     "users.latents": world.user_latents,
                                     "users.drifts": world.user_drifts},
                                    {"config_digest": digest, "kind": "world"})
    container.save(path)


def load_world(path: str) -> Tuple[World, CheckpointContainer]:
    """
    Read a world written by save_world. Returned arrays are float64.
    """
    container = CheckpointContainer.load(path, WORLD_ARRAYS)

    def array(name):
        return container.get(name).astype(np.float64)

    world = World(array("items.latents"), array("items.features"),
                  container.get("items.clusters").astype(np.int64), container.get("items.subclusters").astype(np.int64),
                  array("users.latents"), array("users.drifts"))
    return world, container


def save_sessions(path: str, log: SessionLog, digest: str):
    """
    Write sessions as tab separated records. History items come first with tier 0, in history order.
    """
    rows = []
    for session in log:
        holdout = int(session.holdout)
        for item in session.history:
            rows.append((session.user_id, session.timestamp, HISTORY_TIER, item, holdout))
        for tier in (4, 3, 2, 1):
            for item in session.tiers.get(tier, []):
                rows.append((session.user_id, session.timestamp, tier, item, holdout))
    frame = pd.DataFrame(rows, columns=SESSIONS_COLUMNS)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        stream.write(SESSIONS_HEADER % (SESSIONS_VERSION, digest))
        frame.to_csv(stream, sep="\t", index=False, lineterminator="\n")


def load_sessions(path: str) -> Tuple[SessionLog, str]:
    """
    Read sessions written by save_sessions, with the embedded config digest.
    """
    with open(path, "r", encoding="utf-8") as stream:
        match = _HEADER_PATTERN.match(stream.readline().rstrip("\n"))
        if not match:
            raise CheckpointFormatError("%s: missing sessions header" % path)
        if int(match.group(1)) != SESSIONS_VERSION:
            raise CheckpointFormatError("%s: unsupported sessions version %s" % (path, match.group(1)))
        frame = pd.read_csv(stream, sep="\t", dtype=int)

    if list(frame.columns) != SESSIONS_COLUMNS:
        raise CheckpointFormatError("%s: unexpected columns %s" % (path, list(frame.columns)))

    sessions = []
    for (user_id, timestamp), group in frame.groupby(["user_id", "timestamp"], sort=False):
        history = group.loc[group["tier"] == HISTORY_TIER, "item_id"].tolist()
        tiers = {tier: group.loc[group["tier"] == tier, "item_id"].tolist() for tier in (4, 3, 2, 1)}
        sessions.append(Session(int(user_id), int(timestamp), [int(item) for item in history],
                                {tier: [int(item) for item in items] for tier, items in tiers.items()},
                                holdout=bool(group["holdout"].iloc[0])))
    return SessionLog(sessions), match.group(2)


def save_sids(path: str, sids: Dict[int, SemanticId], digest: str):
    """
    Write "item_id code_1 ... code_m" records.
    """
    m = len(next(iter(sids.values())))  # pylint:disable=invalid-name
    frame = pd.DataFrame([[item_id] + list(sid.codes) for item_id, sid in sorted(sids.items())],
                         columns=["item_id"] + ["code_%d" % (level + 1) for level in range(m)])
    with open(path, "w", encoding="utf-8", newline="") as stream:
        stream.write("# sidrank-sids v1 digest=%s\n" % digest)
        frame.to_csv(stream, sep="\t", index=False, lineterminator="\n")


def load_sids(path: str) -> Tuple[Dict[int, SemanticId], str]:
    """
    Read semantic ids written by save_sids, with the embedded config digest.
    """
    with open(path, "r", encoding="utf-8") as stream:
        header = stream.readline().rstrip("\n")
        match = re.match(r"^# sidrank-sids v1 digest=(\S*)$", header)
        if not match:
            raise CheckpointFormatError("%s: missing semantic ids header" % path)
        frame = pd.read_csv(stream, sep="\t", dtype=int)
    codes = [column for column in frame.columns if column.startswith("code_")]
    return {int(row[0]): SemanticId(tuple(int(code) for code in row[1:]))
            for row in frame[["item_id"] + codes].itertuples(index=False)}, match.group(1)
