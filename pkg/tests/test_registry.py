# -*- coding: utf-8 -*-
import inspect

import pytest

from sidrank.phase import Phase
from sidrank.registry import Registry
from sidrank.training import Variant, variants, register_default_variants


class Closable(Phase):
    closed = 0

    def close(self):
        Closable.closed += 1


class TestRegistry:
    def test_register_and_get(self):
        registry = Registry(Phase, "Phase")

        train = registry.register(Phase("train"))

        assert registry.get("train") is train
        assert registry.has("train")
        assert registry.all() == (train,)

    def test_names_keep_registration_order(self):
        registry = Registry(Phase, "Phase")

        for name in ("tokenize", "gen", "train"):
            registry.register(Phase(name))

        assert registry.names() == ("tokenize", "gen", "train")

    def test_unknown_name(self):
        registry = Registry(Phase, "Phase")

        with pytest.raises(ValueError) as e:
            registry.get("gen")
        assert str(e.value) == 'Phase name "gen" is not registered'

    def test_duplicate_name(self):
        registry = Registry(Phase, "Phase")
        registry.register(Phase("gen"))

        with pytest.raises(ValueError) as e:
            registry.register(Phase("gen"))
        assert str(e.value) == 'Phase name "gen" is already registered'

    def test_wrong_type(self):
        registry = Registry(Phase, "Phase")

        with pytest.raises(ValueError) as e:
            registry.register(Variant("full", "Full", iap=True, rsp=True))
        assert str(e.value) == 'Phase name "full" should be an instance of Phase'

    def test_missing_name(self):
        registry = Registry(object, "Object")

        with pytest.raises(ValueError) as e:
            registry.register(object())
        assert str(e.value) == "Name should be provided to register this kind of object"

    def test_alternative_name(self):
        registry = Registry(Phase, "Phase")
        phase = Phase("serve-sim")

        registry.register(phase, "serve")

        assert registry.get("serve") is phase
        assert not registry.has("serve-sim")

    def test_unregister(self):
        registry = Registry(Phase, "Phase")
        phase = registry.register(Phase("eval"))

        assert registry.unregister("eval") is phase
        assert registry.all() == ()
        with pytest.raises(ValueError):
            registry.unregister("eval")

    def test_close(self):
        registry = Registry(Phase, "Phase")
        registry.register(Closable("ablate"))
        registry.register(Phase("sweep"))
        Closable.closed = 0

        registry.close()

        assert Closable.closed == 1
        assert registry.all() == ()


class TestVariants:
    def test_default_variants(self):
        register_default_variants()

        assert variants.names() == ("full", "no-iap", "no-rsp", "no-both")

    def test_variant_switches(self):
        register_default_variants()

        assert variants.get("full").alpha(2.0) == 2.0
        assert variants.get("full").ranker == "rsp"
        assert not variants.get("full").history_ntp

        assert variants.get("no-iap").alpha(2.0) == 0.0
        assert variants.get("no-iap").history_ntp
        assert variants.get("no-iap").rsp
        assert variants.get("no-iap").ranker == "rsp"

        assert variants.get("no-rsp").ranker == "iap"
        assert not variants.get("no-rsp").rsp

        assert variants.get("no-both").history_ntp
        assert variants.get("no-both").ranker == "iap"

    def test_description(self):
        assert Variant("custom", "Custom variant", iap=True, rsp=False).description == "Custom variant"
        assert Phase("gen").description == inspect.getdoc(Phase)
