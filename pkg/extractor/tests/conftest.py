"""A tiny local masked LM so extraction runs without downloads.

The model is a regular BERT masked-LM checkpoint (random but seeded
weights, WordPiece tokenizer built from a closed vocabulary), saved to
disk and loaded through the standard auto classes, so the extractor
exercises exactly the code path it would with a published model.
"""

import json

import pytest
import torch
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import BertNormalizer
from tokenizers.pre_tokenizers import BertPreTokenizer
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertForMaskedLM, PreTrainedTokenizerFast

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "i", "see", "don", "'", "t", "know", "anyone", "here", ",", ".",
    "must", "leave", "the", "baker", "did", "n", "sell", "any", "bread",
    "some", "so", "##ld", "at", "market", "she", "bought", "books",
    "maria", "said", "that", "old", "town", "from", "but", "others",
    "stayed", "near", "door", "not", "every", "went", "in", "early",
    "wanting", "to", "me", "there", "are", "rules", "of", "logic",
    "anything", "something", "##thing", "##one", "##body", "a", "##ny",
]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("tiny-mlm")
    vocab = {tok: i for i, tok in enumerate(VOCAB)}
    backend = Tokenizer(WordPiece(vocab, unk_token="[UNK]"))
    backend.normalizer = BertNormalizer(lowercase=True)
    backend.pre_tokenizer = BertPreTokenizer()
    backend.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=backend, unk_token="[UNK]", pad_token="[PAD]",
        cls_token="[CLS]", sep_token="[SEP]", mask_token="[MASK]")
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    torch.manual_seed(1234)
    model = BertForMaskedLM(config)
    model.save_pretrained(root)
    tokenizer.save_pretrained(root)
    return str(root)


@pytest.fixture(scope="session")
def corpus_file(tmp_path_factory):
    """Hand-written corpus.db records (the primary component's format)."""
    root = tmp_path_factory.mktemp("corpus")
    records = [
        {
            "id": "worked",
            "tokens": [
                {"surface": "I", "pos": "PRP", "word": 0},
                {"surface": "see", "pos": "VBP", "word": 1},
                {"surface": "I", "pos": "PRP", "word": 2},
                {"surface": "do", "pos": "VBP", "word": 3},
                {"surface": "n't", "pos": "RB", "word": 3},
                {"surface": "know", "pos": "VB", "word": 4},
                {"surface": "anyone", "pos": "NN", "word": 5},
                {"surface": "here", "pos": "RB", "word": 6},
                {"surface": ",", "pos": ",", "word": 7},
                {"surface": "I", "pos": "PRP", "word": 8},
                {"surface": "must", "pos": "MD", "word": 9},
                {"surface": "leave", "pos": "VB", "word": 10},
                {"surface": ".", "pos": ".", "word": 11},
            ],
            "deptree": [
                {"head": 1, "deprel": "nsubj"}, {"head": -1, "deprel": "root"},
                {"head": 5, "deprel": "nsubj"}, {"head": 5, "deprel": "aux"},
                {"head": 5, "deprel": "advmod"}, {"head": 1, "deprel": "ccomp"},
                {"head": 5, "deprel": "obj"}, {"head": 5, "deprel": "advmod"},
                {"head": 5, "deprel": "punct"}, {"head": 11, "deprel": "nsubj"},
                {"head": 11, "deprel": "aux"}, {"head": 5, "deprel": "parataxis"},
                {"head": 1, "deprel": "punct"},
            ],
            "consttree": None,
            "meta": {"genre": "spoken"},
        },
        {
            "id": "bread",
            "tokens": [
                {"surface": "the", "pos": "DT", "word": 0},
                {"surface": "baker", "pos": "NN", "word": 1},
                {"surface": "did", "pos": "VBD", "word": 2},
                {"surface": "n't", "pos": "RB", "word": 2},
                {"surface": "sell", "pos": "VB", "word": 3},
                {"surface": "any", "pos": "DT", "word": 4},
                {"surface": "bread", "pos": "NN", "word": 5},
                {"surface": ".", "pos": ".", "word": 6},
            ],
            "deptree": [
                {"head": 1, "deprel": "det"}, {"head": 4, "deprel": "nsubj"},
                {"head": 4, "deprel": "aux"}, {"head": 4, "deprel": "advmod"},
                {"head": -1, "deprel": "root"}, {"head": 6, "deprel": "det"},
                {"head": 4, "deprel": "obj"}, {"head": 4, "deprel": "punct"},
            ],
            "consttree": None,
            "meta": {"genre": "news"},
        },
        {
            "id": "books",
            "tokens": [
                {"surface": "She", "pos": "PRP", "word": 0},
                {"surface": "bought", "pos": "VBD", "word": 1},
                {"surface": "some", "pos": "DT", "word": 2},
                {"surface": "books", "pos": "NNS", "word": 3},
                {"surface": ".", "pos": ".", "word": 4},
            ],
            "deptree": [
                {"head": 1, "deprel": "nsubj"}, {"head": -1, "deprel": "root"},
                {"head": 3, "deprel": "det"}, {"head": 1, "deprel": "obj"},
                {"head": 1, "deprel": "punct"},
            ],
            "consttree": None,
            "meta": {"genre": "fiction"},
        },
    ]
    path = root / "corpus.db"
    with open(path, "w") as f:
        for rec in records:
            f.write(json.dumps(rec) + "\n")
    return str(path)
