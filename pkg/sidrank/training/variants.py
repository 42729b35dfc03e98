# -*- coding: utf-8 -*-
from ..registry import Registry, DefaultRegistryObject


class Variant(DefaultRegistryObject):
    """
    Training and retrieval switches of a model variant.
    """

    def __init__(self, name: str, description: str, iap: bool, rsp: bool, history_ntp=False):
        super().__init__(name, description)
        self.iap = iap
        self.rsp = rsp
        self.history_ntp = history_ntp

    @property
    def ranker(self) -> str:
        """
        Retrieval ranker, "rsp" or "iap".
        """
        return "rsp" if self.rsp else "iap"

    def alpha(self, configured: float) -> float:
        """
        Effective listwise preference loss weight.
        """
        return configured if self.iap else 0.0


variants = Registry(Variant, "Variant")


def register_default_variants():
    """
    Register the four model variants.
    """
    variants.register(Variant("full", "Listwise preference optimization and rank head", iap=True, rsp=True))
    variants.register(Variant("no-iap", "Plain next token prediction over history and next item, with rank head",
                              iap=False, rsp=True, history_ntp=True))
    variants.register(Variant("no-rsp", "No rank head, items ranked by backbone log-probabilities",
                              iap=True, rsp=False))
    variants.register(Variant("no-both", "Plain next token prediction over history and next item",
                              iap=False, rsp=False, history_ntp=True))
