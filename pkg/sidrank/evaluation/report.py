# -*- coding: utf-8 -*-
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import List, Dict, Tuple, TextIO, Sequence

import numpy as np
import pandas as pd


@dataclass
class ReportRow:
    """
    Hit rate of one label (variant or sweep value) for a truth tier and k, one value per seed.
    """
    label: str
    tier: str
    k: int
    values: List[float] = field(default_factory=list)

    @property
    def mean(self) -> float:
        """
        Mean over seeds.
        """
        return float(np.mean(self.values)) if self.values else 0.0

    @property
    def sd(self) -> float:  # pylint:disable=invalid-name
        """
        Sample standard deviation over seeds, 0 with a single seed.
        """
        return float(np.std(self.values, ddof=1)) if len(self.values) > 1 else 0.0


@dataclass
class MetricsReport:
    """
    Hit rate rows with the seeds and configuration digest they were computed with.
    """
    seeds: List[int]
    config_digest: str
    rows: List[ReportRow] = field(default_factory=list)
    metadata: Dict[str, str] = field(default_factory=OrderedDict)

    def add(self, label: str, rates: Dict[Tuple[str, int], float]):
        """
        Append the hit rates of one seed to the rows of a label.
        """
        for (tier, k), value in rates.items():
            row = self.row(label, tier, k, create=True)
            row.values.append(float(value))

    def row(self, label: str, tier: str, k: int, create=False) -> ReportRow:
        """
        Row of a label, tier and k.
        """
        for row in self.rows:
            if (row.label, row.tier, row.k) == (label, tier, k):
                return row
        if not create:
            raise KeyError("%s/%s@%d" % (label, tier, k))
        row = ReportRow(label, tier, k)
        self.rows.append(row)
        return row

    @property
    def labels(self) -> List[str]:
        """
        Labels in insertion order.
        """
        return list(OrderedDict.fromkeys(row.label for row in self.rows))

    def to_frame(self) -> pd.DataFrame:
        """
        Rows as a data frame.
        """
        return pd.DataFrame([OrderedDict([("label", row.label), ("tier", row.tier), ("k", row.k),
                                          ("mean", row.mean), ("sd", row.sd), ("n", len(row.values))])
                             for row in self.rows], columns=["label", "tier", "k", "mean", "sd", "n"])

    def write_tsv(self, stream: TextIO):
        """
        Write the report table.
        """
        self.to_frame().to_csv(stream, sep="\t", index=False, float_format="%.6f", lineterminator="\n")

    def summary(self) -> List[Tuple[str, str]]:
        """
        Report as key, value pairs.
        """
        ret = [("config_digest", self.config_digest), ("seeds", ",".join(str(seed) for seed in self.seeds))]
        ret.extend(self.metadata.items())
        for row in self.rows:
            key = "hr.%s.%s.%d" % (row.label, row.tier, row.k)
            ret.append((key + ".mean", "%.6f" % row.mean))
            ret.append((key + ".sd", "%.6f" % row.sd))
        return ret

    def write_summary(self, stream: TextIO):
        """
        Write the key=value summary.
        """
        write_key_values(stream, self.summary())


def write_key_values(stream: TextIO, items: Sequence[Tuple[str, object]]):
    """
    Write one key=value line per item.
    """
    for key, value in items:
        stream.write("%s=%s\n" % (key, value))
