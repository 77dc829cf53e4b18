"""Shared utilities for pottsmaps"""
