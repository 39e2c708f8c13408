# core package 