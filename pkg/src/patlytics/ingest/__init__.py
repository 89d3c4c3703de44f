from patlytics.ingest.splitter import RawDocumentChunk, split_concatenated_xml
from patlytics.ingest.parser import ParseFailure, parse_patent_document
from patlytics.ingest.pipeline import IngestReport, QuarantineRecord, ingest_path

__all__ = [
    "RawDocumentChunk",
    "split_concatenated_xml",
    "ParseFailure",
    "parse_patent_document",
    "IngestReport",
    "QuarantineRecord",
    "ingest_path",
]
