"""Schemas for run configuration and artifacts"""
