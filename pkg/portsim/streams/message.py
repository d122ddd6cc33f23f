"""Messages: the alphabet D of a communication history."""

from dataclasses import dataclass
from typing import Any, Optional, Tuple
from urllib.parse import quote, unquote

# String payloads that would not read back unchanged are written as QUOTE
# followed by their percent encoding.
QUOTE = '"'
RESERVED = '#@%"'


@dataclass(frozen=True, order=True)
class Message:
    """An opaque payload with a sort tag.

    Parameters
    ----------
    sort : string
        Sort (type) tag, e.g. ``int``, ``bit``, ``enq``.
    payload : object
        Hashable payload. Integers and strings survive the text format.
        Sender and receiver must not contain whitespace, ``#``, ``@`` or
        ``->``.
    meta : tuple of strings or None
        Optional (sender, receiver) annotation.
    """

    sort: str
    payload: Any
    meta: Optional[Tuple[str, str]] = None

    @property
    def sender(self):
        return self.meta[0] if self.meta is not None else None

    @property
    def receiver(self):
        return self.meta[1] if self.meta is not None else None

    def with_meta(self, sender, receiver):
        return Message(self.sort, self.payload, (sender, receiver))

    def render(self):
        out = '{}:{}'.format(self.sort, render_payload(self.payload))
        if self.meta is not None:
            out += '@{}->{}'.format(self.meta[0], self.meta[1])
        return out

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, token):
        """Inverse of :meth:`render`.

        Payloads that read as integers are converted back to int; quoted
        payloads are strings.
        """
        meta = None
        if '@' in token:
            token, annot = token.split('@', 1)
            if '->' not in annot:
                raise ValueError("bad annotation in {!r}".format(annot))
            sender, receiver = annot.split('->', 1)
            meta = (sender, receiver)
        if ':' not in token:
            raise ValueError("message {!r} has no sort".format(token))
        sort, payload = token.split(':', 1)
        if not sort:
            raise ValueError("message {!r} has an empty sort".format(token))
        if payload.startswith(QUOTE):
            return cls(sort, unquote(payload[1:]), meta)
        try:
            payload = int(payload)
        except ValueError:
            pass
        return cls(sort, payload, meta)


def is_plain(text):
    """Can ``text`` be written as a payload without quoting?"""
    if not text or text[0] == QUOTE:
        return False
    if any(ch.isspace() or ch in RESERVED for ch in text):
        return False
    try:
        int(text)
    except ValueError:
        return True
    return False


def render_payload(payload):
    if isinstance(payload, str) and not is_plain(payload):
        return QUOTE + quote(payload, safe='')
    return str(payload)


def msg(payload, sort='int', meta=None):
    """Shorthand used throughout the builtin networks and the tests."""
    return Message(sort, payload, meta)


def msgs(*payloads, sort='int'):
    return tuple(Message(sort, p) for p in payloads)
