"""Serializers for problem configuration files."""

from fractions import Fraction

from rest_framework import serializers


class SurdSerializer(serializers.Serializer):
    p = serializers.CharField()
    q = serializers.CharField()
    d = serializers.IntegerField(min_value=0)

    def validate(self, attrs):
        try:
            attrs['p'] = Fraction(attrs['p'])
            attrs['q'] = Fraction(attrs['q'])
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError('p and q must be integers or fractions like "1/2"')
        return attrs


class RatioSerializer(serializers.Serializer):
    """Either {num, den}, {surd: {p, q, d}} or {float: x}."""
    num = serializers.IntegerField(required=False)
    den = serializers.IntegerField(required=False, min_value=1)
    surd = SurdSerializer(required=False)
    float = serializers.FloatField(required=False)

    def validate(self, attrs):
        given = [key for key in ('num', 'surd', 'float') if key in attrs]
        if len(given) != 1:
            raise serializers.ValidationError('give exactly one of num/den, surd or float')
        if 'den' in attrs and 'num' not in attrs:
            raise serializers.ValidationError('den given without num')
        return attrs


class SchemaSerializer(serializers.Serializer):
    gamma = serializers.IntegerField()
    delta = serializers.IntegerField()
    q = serializers.IntegerField(min_value=0)
    chi = serializers.IntegerField(min_value=0)


class BoundaryFunctionSerializer(serializers.Serializer):
    type = serializers.ChoiceField(choices=['sine', 'samples'])
    terms = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        required=False,
    )
    values = serializers.ListField(child=serializers.FloatField(), required=False)

    def validate(self, attrs):
        if attrs['type'] == 'sine':
            terms = attrs.get('terms')
            if terms is None:
                raise serializers.ValidationError('sine data needs "terms"')
            modes = [mode for mode, _ in terms]
            if any(mode != int(mode) or mode < 1 for mode in modes):
                raise serializers.ValidationError('sine modes must be positive integers')
            if any(b <= a for a, b in zip(modes, modes[1:])):
                raise serializers.ValidationError('sine modes must be strictly increasing')
        else:
            values = attrs.get('values')
            if values is None:
                raise serializers.ValidationError('sampled data needs "values"')
            if len(values) < 17 or len(values) % 2 == 0:
                raise serializers.ValidationError('need an odd number (≥ 17) of samples')
        return attrs


class TolerancesSerializer(serializers.Serializer):
    degeneracy_tol = serializers.FloatField(required=False, min_value=0.0)
    residual_tol = serializers.FloatField(required=False, min_value=0.0)
    resonance_tol = serializers.FloatField(required=False, min_value=0.0)


class ProblemConfigSerializer(serializers.Serializer):
    """Validates the key-value tree of a problem configuration file."""
    order = serializers.IntegerField(min_value=2)
    l = serializers.FloatField()
    a = serializers.FloatField()
    ratio = RatioSerializer()
    schema = SchemaSerializer()
    phi = BoundaryFunctionSerializer(many=True)
    psi = BoundaryFunctionSerializer(many=True)
    K = serializers.IntegerField(required=False, min_value=1)
    tolerances = TolerancesSerializer(required=False)
    kernel_amplitudes = serializers.DictField(
        child=serializers.ListField(child=serializers.FloatField()), required=False,
    )

    def validate_order(self, value):
        if value % 2:
            raise serializers.ValidationError('equation order 2n must be even')
        return value

    def validate_kernel_amplitudes(self, value):
        try:
            return {int(k): tuple(amplitudes) for k, amplitudes in value.items()}
        except ValueError:
            raise serializers.ValidationError('kernel amplitude keys must be mode numbers')
