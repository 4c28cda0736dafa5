import argparse

import pytest

from utils.validation import (
    float_list,
    int_list,
    non_negative,
    parse_impulses,
    parse_mix,
    parse_range,
    parse_relax,
    peer_count,
    positive_int,
    probability,
)


class TestLists:
    def test_float_list(self):
        assert float_list("0.25, 0.25,0.5,") == (0.25, 0.25, 0.5)
        assert float_list("1;2", sep=";") == (1.0, 2.0)

    def test_int_list(self):
        assert int_list("0,255") == (0, 255)
        with pytest.raises(ValueError):
            int_list("0,2.5")


class TestArgumentTypes:
    def test_parse_range(self):
        assert parse_range("6:20:2") == (6.0, 20.0, 2.0)
        assert parse_range("10") == (10.0, 10.0, 1.0)

    @pytest.mark.parametrize("text", ["1:8", "a:b:c", "", "1:2:3:4"])
    def test_parse_range_rejects(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(text)

    def test_probability(self):
        assert probability("0") == 0.0
        assert probability("1") == 1.0
        for text in ("1.2", "-0.1", "x", "nan"):
            with pytest.raises(argparse.ArgumentTypeError):
                probability(text)

    def test_peer_count(self):
        assert peer_count("1") == 1
        assert peer_count("8") == 8
        for text in ("0", "9", "3.5"):
            with pytest.raises(argparse.ArgumentTypeError):
                peer_count(text)

    def test_non_negative(self):
        assert non_negative("0") == 0.0
        assert non_negative("48.5") == 48.5
        for text in ("-1", "nan", "many"):
            with pytest.raises(argparse.ArgumentTypeError):
                non_negative(text)

    def test_positive_int(self):
        assert positive_int("8") == 8
        for text in ("0", "-2", "two"):
            with pytest.raises(argparse.ArgumentTypeError):
                positive_int(text)

    def test_mix_and_impulses(self):
        assert parse_mix("0.25,0.25,0.25,0.25") == (0.25, 0.25, 0.25, 0.25)
        assert parse_impulses("0,128,255") == (0, 128, 255)
        with pytest.raises(argparse.ArgumentTypeError):
            parse_mix("a")
        with pytest.raises(argparse.ArgumentTypeError):
            parse_impulses("0.5")

    def test_parse_relax(self):
        assert parse_relax("ht=28,st=20,LT=80") == [("Ht", 28.0), ("St", 20.0), ("Lt", 80.0)]
        for text in ("ht", "xt=1", "ht=-1", "ht=abc"):
            with pytest.raises(argparse.ArgumentTypeError):
                parse_relax(text)
