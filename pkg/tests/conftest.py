"""Shared helpers for building small tagged documents in tests."""

import pytest

from filread.postags import TaggedDocument, parse_tagged


@pytest.fixture
def make_tagged_doc():
    def build(text: str, doc_id: str = "doc") -> TaggedDocument:
        return TaggedDocument(id=doc_id, sentences=tuple(parse_tagged(text)))

    return build
