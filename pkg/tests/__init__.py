"""Tests for pottsmaps"""
