"""Core domain types: series, concept masks, samples, datasets, segments.

All types are immutable after construction (arrays are frozen via the numpy
writeable flag) and therefore safe to share across concurrent workers.  The
segment operations :func:`segment_index`, :func:`extract` and :func:`splice`
are pure functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = [
    "MultivariateSeries",
    "ConceptMask",
    "ClassLabel",
    "LabeledSample",
    "Dataset",
    "SegmentIndex",
    "segment_index",
    "extract",
    "splice",
    "SPLITS",
]

SPLITS = ("train", "validation", "test")

# Binary class label: 1 is the target class, 0 the baseline class.
ClassLabel = int


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class MultivariateSeries:
    """A real-valued signal of shape [n_channels, n_timesteps]."""

    values: np.ndarray
    channel_names: Optional[tuple[str, ...]] = None
    dt: Optional[float] = None

    def __post_init__(self):
        values = _freeze(np.atleast_2d(self.values))
        object.__setattr__(self, "values", values)
        if values.ndim != 2:
            raise ValueError(f"series values must be 2-D, got shape {values.shape}")
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError(f"series must be non-empty, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("series contains NaN or Inf values")
        if self.channel_names is not None:
            names = tuple(str(n) for n in self.channel_names)
            if len(names) != values.shape[0]:
                raise ValueError(
                    f"{len(names)} channel names for {values.shape[0]} channels"
                )
            object.__setattr__(self, "channel_names", names)

    @property
    def n_channels(self) -> int:
        return self.values.shape[0]

    @property
    def n_timesteps(self) -> int:
        return self.values.shape[1]

    def names(self) -> tuple[str, ...]:
        """Channel names, defaulting to ch0..chN-1."""
        if self.channel_names is not None:
            return self.channel_names
        return tuple(f"ch{i}" for i in range(self.n_channels))

    def with_values(self, values: np.ndarray) -> "MultivariateSeries":
        return MultivariateSeries(values, self.channel_names, self.dt)


@dataclass(frozen=True)
class ConceptMask:
    """Per-timestep (vector form) or per-position (matrix form) concept labels.

    Entries are in 1..n_concepts.  The vector form is the channel-agnostic
    representation: it broadcasts exactly across channels.  A concept may be
    absent from a sample; :func:`segment_index` then returns an empty index.
    """

    labels: np.ndarray
    n_concepts: int

    def __post_init__(self):
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        if labels.ndim not in (1, 2):
            raise ValueError(f"mask labels must be 1-D or 2-D, got {labels.ndim}-D")
        if self.n_concepts < 1:
            raise ValueError("n_concepts must be >= 1")
        if labels.size == 0:
            raise ValueError("mask must be non-empty")
        lo, hi = int(labels.min()), int(labels.max())
        if lo < 1 or hi > self.n_concepts:
            raise ValueError(
                f"mask entries must lie in 1..{self.n_concepts}, found [{lo}, {hi}]"
            )

    @property
    def channel_agnostic(self) -> bool:
        return self.labels.ndim == 1

    @property
    def n_timesteps(self) -> int:
        return self.labels.shape[-1]

    def grid(self, n_channels: int) -> np.ndarray:
        """The mask expanded to a [n_channels, n_timesteps] matrix."""
        if self.labels.ndim == 1:
            return np.broadcast_to(self.labels, (n_channels, self.labels.shape[0]))
        if self.labels.shape[0] != n_channels:
            raise ValueError(
                f"mask has {self.labels.shape[0]} channels, series has {n_channels}"
            )
        return self.labels

    def present_concepts(self) -> list[int]:
        return sorted(int(c) for c in np.unique(self.labels))


@dataclass(frozen=True)
class LabeledSample:
    """A series with its concept mask and binary class label."""

    series: MultivariateSeries
    mask: Optional[ConceptMask]
    label: ClassLabel
    sample_id: str

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label!r}")
        if self.mask is not None:
            if self.mask.n_timesteps != self.series.n_timesteps:
                raise ValueError(
                    f"sample {self.sample_id!r}: mask covers "
                    f"{self.mask.n_timesteps} timesteps, series has "
                    f"{self.series.n_timesteps}"
                )
            if not self.mask.channel_agnostic:
                if self.mask.labels.shape[0] != self.series.n_channels:
                    raise ValueError(
                        f"sample {self.sample_id!r}: mask/series channel mismatch"
                    )


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of samples plus a train/validation/test split."""

    samples: tuple[LabeledSample, ...]
    split: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        ids = [s.sample_id for s in self.samples]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate sample ids: {dupes}")
        if self.samples:
            n_ch = self.samples[0].series.n_channels
            n_t = self.samples[0].series.n_timesteps
            names = self.samples[0].series.names()
            for s in self.samples:
                if s.series.n_channels != n_ch or s.series.names() != names:
                    raise ValueError(
                        f"sample {s.sample_id!r} has different channels"
                    )
                if s.series.n_timesteps != n_t:
                    raise ValueError(
                        f"sample {s.sample_id!r} has {s.series.n_timesteps} "
                        f"timesteps, expected {n_t}"
                    )
        if set(self.split) != set(ids):
            raise ValueError("split must cover exactly the sample ids")
        bad = {v for v in self.split.values() if v not in SPLITS}
        if bad:
            raise ValueError(f"unknown split names: {sorted(bad)}")

    def subset(self, split: str, label: Optional[ClassLabel] = None) -> list[LabeledSample]:
        out = [s for s in self.samples if self.split[s.sample_id] == split]
        if label is not None:
            out = [s for s in out if s.label == label]
        return out

    @property
    def n_channels(self) -> int:
        return self.samples[0].series.n_channels

    def channel_names(self) -> tuple[str, ...]:
        return self.samples[0].series.names()

    def n_concepts(self) -> int:
        cs = {s.mask.n_concepts for s in self.samples if s.mask is not None}
        if len(cs) > 1:
            raise ValueError(f"inconsistent n_concepts across samples: {sorted(cs)}")
        return cs.pop() if cs else 0

    def with_masks(self, masks: dict[str, ConceptMask]) -> "Dataset":
        samples = tuple(
            LabeledSample(s.series, masks.get(s.sample_id, s.mask), s.label, s.sample_id)
            for s in self.samples
        )
        return Dataset(samples, dict(self.split))


@dataclass(frozen=True)
class SegmentIndex:
    """The (channel, timestep) positions of one concept's region.

    Positions are stored as parallel sorted arrays; an empty index is legal
    and signals that the concept is absent (downstream operations skip it).
    """

    channels: np.ndarray
    timesteps: np.ndarray
    concept: int
    channel: Optional[int] = None

    def __post_init__(self):
        ch = np.ascontiguousarray(self.channels, dtype=np.int64)
        ts = np.ascontiguousarray(self.timesteps, dtype=np.int64)
        if ch.shape != ts.shape or ch.ndim != 1:
            raise ValueError("channels/timesteps must be parallel 1-D arrays")
        order = np.lexsort((ts, ch))
        ch, ts = ch[order], ts[order]
        ch.flags.writeable = False
        ts.flags.writeable = False
        object.__setattr__(self, "channels", ch)
        object.__setattr__(self, "timesteps", ts)

    def __len__(self) -> int:
        return int(self.channels.shape[0])

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def positions(self) -> set[tuple[int, int]]:
        return set(zip(self.channels.tolist(), self.timesteps.tolist()))


def segment_index(
    mask: ConceptMask,
    concept: int,
    n_channels: int,
    channel: Optional[int] = None,
) -> SegmentIndex:
    """All positions where the mask equals ``concept``.

    With ``channel`` given, the index is restricted to that channel.  The
    result is empty when the concept does not occur in the mask.
    """
    if not 1 <= concept <= mask.n_concepts:
        raise ValueError(f"concept {concept} out of range 1..{mask.n_concepts}")
    if channel is not None and not 0 <= channel < n_channels:
        raise ValueError(f"channel {channel} out of range 0..{n_channels - 1}")
    grid = mask.grid(n_channels)
    ch, ts = np.nonzero(grid == concept)
    if channel is not None:
        keep = ch == channel
        ch, ts = ch[keep], ts[keep]
    return SegmentIndex(ch, ts, concept=concept, channel=channel)


def extract(base: MultivariateSeries, idx: SegmentIndex) -> np.ndarray:
    """The values of ``base`` at the index positions, aligned to the index."""
    return base.values[idx.channels, idx.timesteps].copy()


def splice(
    base: MultivariateSeries, idx: SegmentIndex, replacement: np.ndarray
) -> MultivariateSeries:
    """A copy of ``base`` with the index positions replaced.

    The output equals ``base`` everywhere outside ``idx``; ``base`` itself is
    never modified.
    """
    replacement = np.asarray(replacement, dtype=np.float64).ravel()
    if replacement.shape[0] != len(idx):
        raise ValueError(
            f"replacement has {replacement.shape[0]} values for {len(idx)} positions"
        )
    values = base.values.copy()
    values[idx.channels, idx.timesteps] = replacement
    return base.with_values(values)
