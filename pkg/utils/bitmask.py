from typing import Iterable, List


def to_mask(elements: Iterable[int], offset: int = 0) -> int:
    """
    Pack integer labels into a bitmask.

    Args:
        elements: Labels to pack.
        offset: Subtracted from each label before shifting (1 for ground labels).

    Returns:
        int: Bitmask with bit (e - offset) set for each label e.
    """
    mask = 0
    for e in elements:
        mask |= 1 << (e - offset)
    return mask


def from_mask(mask: int, offset: int = 0) -> List[int]:
    """Unpack a bitmask into ascending labels"""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1 + offset)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")
