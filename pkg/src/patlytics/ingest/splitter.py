"""Split USPTO bulk files into standalone XML documents.

Bulk full-text files are plain concatenations of complete XML documents,
each introduced by its own ``<?xml`` declaration at the start of a line.
The splitter never buffers more than one document, so arbitrarily large
files stream through in bounded memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import BinaryIO, Iterator

_XML_DECL = b"<?xml"


@dataclass(frozen=True)
class RawDocumentChunk:
    """One complete XML document sliced out of a bulk file.

    ``byte_offset`` is the position of the chunk's first byte in the source
    file. ``xml_text`` is decoded as UTF-8 with invalid sequences replaced,
    so ingestion never aborts on stray bytes; for well-formed UTF-8 input,
    re-encoding every chunk in order reproduces the file byte-for-byte.
    """

    source_file: str
    byte_offset: int
    xml_text: str


def split_concatenated_xml(
    stream: BinaryIO, source_file: str = "<stream>"
) -> Iterator[RawDocumentChunk]:
    """Yield one chunk per embedded XML document, in file order.

    A chunk runs from one line-initial ``<?xml`` declaration up to (not
    including) the next. Bytes before the first declaration, or a final
    document cut short by truncation, are still emitted as chunks so that
    downstream parsing can quarantine them; no input byte is ever dropped.
    An empty stream yields nothing.
    """
    buf = bytearray()
    chunk_start = 0
    pos = 0
    for line in stream:
        if line.startswith(_XML_DECL) and buf:
            yield RawDocumentChunk(
                source_file=source_file,
                byte_offset=chunk_start,
                xml_text=buf.decode("utf-8", errors="replace"),
            )
            buf = bytearray()
            chunk_start = pos
        buf += line
        pos += len(line)
    if buf:
        yield RawDocumentChunk(
            source_file=source_file,
            byte_offset=chunk_start,
            xml_text=buf.decode("utf-8", errors="replace"),
        )
