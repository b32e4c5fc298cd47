// Replacement for boost/multiprecision/traits/is_byte_container.hpp (Boost <= 1.75).
//
// Eigen 3.4 expression types declare `const_iterator` as `void` when they are
// not vectors. The stock trait instantiates std::iterator_traits<void> and
// hard-errors inside overload resolution the moment a multiprecision scalar
// meets an Eigen expression. This version treats a void iterator as "not a
// byte container". It must be included before any Boost.Multiprecision header,
// which is why it reuses the original include guard.
#ifndef BOOST_IS_BYTE_CONTAINER_HPP
#define BOOST_IS_BYTE_CONTAINER_HPP

#include <iterator>
#include <type_traits>

#include <boost/mpl/has_xxx.hpp>
#include <boost/type_traits/integral_constant.hpp>

namespace boost {
namespace multiprecision {
namespace detail {

BOOST_MPL_HAS_XXX_TRAIT_NAMED_DEF(has_member_const_iterator, const_iterator, false)

template <class C, class Iterator>
struct is_byte_container_iter {
  using value_type = std::remove_cv_t<typename std::iterator_traits<Iterator>::value_type>;
  static const bool value = std::is_integral_v<value_type> && sizeof(value_type) == 1;
};

template <class C>
struct is_byte_container_iter<C, void> : boost::false_type {};

template <class C, bool b>
struct is_byte_container_imp : is_byte_container_iter<C, typename C::const_iterator> {};

template <class C>
struct is_byte_container_imp<C, false> : boost::false_type {};

template <class C>
struct is_byte_container : is_byte_container_imp<C, has_member_const_iterator<C>::value> {};

}  // namespace detail
}  // namespace multiprecision
}  // namespace boost

#endif  // BOOST_IS_BYTE_CONTAINER_HPP
