# -*- coding: utf-8 -*-
from sidrank.action import Action
from sidrank.context import context
from sidrank.datagen import generate_world, generate_sessions
from sidrank.event import events
from sidrank.feature.run.artifacts import ArtifactStore
from sidrank.feature.run.settings import world_config


class GenerateAction(Action):
    """
    Generate the synthetic world and its sessions.
    """

    @property
    def event_bindings(self):
        return events.phase.gen

    @property
    def name(self) -> str:
        return "world:gen"

    @staticmethod
    def execute():
        """
        Execute action
        """
        configuration = world_config()
        store = ArtifactStore()
        store.save_world(generate_world(configuration))
        sessions = generate_sessions(store.world(), configuration)
        store.save_sessions(sessions)
        context.log.info("Generated %d items, %d users and %d sessions in %s", configuration.n_items,
                         configuration.n_users, len(sessions.sessions), store.out)
