"""Test suite for ffframes."""
