# -*- coding: utf-8 -*-
from typing import Dict

import torch
from torch import nn


def gradients(loss: torch.Tensor, module: nn.Module) -> Dict[str, torch.Tensor]:
    """
    Reverse-mode gradients of a scalar loss for every named parameter. Parameters the loss doesn't depend on get
    a zero gradient.
    """
    named = [(name, parameter) for name, parameter in module.named_parameters() if parameter.requires_grad]
    grads = torch.autograd.grad(loss, [parameter for _, parameter in named], allow_unused=True)
    return {name: torch.zeros_like(parameter) if grad is None else grad
            for (name, parameter), grad in zip(named, grads)}
